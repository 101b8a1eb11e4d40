#include "commsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "commsim/errors.hpp"

namespace commsim {

EcdfCurve complementary_ecdf(const SizeDistribution& dist, bool drop_zeros) {
    if (dist.empty()) throw ValidationError("cannot compute eCDF of an empty distribution");
    std::vector<std::uint32_t> sizes;
    sizes.reserve(dist.size());
    for (std::uint32_t s : dist) {
        if (!drop_zeros || s > 0) sizes.push_back(s);
    }
    if (sizes.empty()) {
        throw ValidationError("cannot compute eCDF: all sizes are zero");
    }
    std::sort(sizes.begin(), sizes.end());
    const double n = static_cast<double>(sizes.size());
    EcdfCurve curve;
    for (std::size_t i = 0; i < sizes.size();) {
        std::size_t j = i;
        while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
        curve.push_back({sizes[i], static_cast<double>(sizes.size() - i) / n});
        i = j;
    }
    return curve;
}

double gini_coefficient(const SizeDistribution& dist) {
    std::vector<std::uint32_t> sorted(dist);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += sorted[i];
        weighted += static_cast<double>(i + 1) * sorted[i];
    }
    if (sum <= 0.0) throw ValidationError("Gini undefined for an all-zero distribution");
    const double nd = static_cast<double>(n);
    return 2.0 * weighted / (nd * sum) - (nd + 1.0) / nd;
}

SkewSummary skew_summary(const SizeDistribution& dist) {
    SkewSummary out;
    out.gini = gini_coefficient(dist); // throws when every size is zero

    std::vector<std::uint32_t> sorted(dist);
    std::sort(sorted.begin(), sorted.end());
    out.max_size = sorted.back();
    const std::size_t n = sorted.size();
    out.median_size = (n % 2 == 1)
                          ? static_cast<double>(sorted[n / 2])
                          : (static_cast<double>(sorted[n / 2 - 1]) + sorted[n / 2]) / 2.0;

    double mean = 0.0;
    for (std::uint32_t s : sorted) mean += s;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::uint32_t s : sorted) {
        const double d = s - mean;
        var += d * d;
    }
    var /= static_cast<double>(n);
    out.cv = std::sqrt(var) / mean;

    // R^2 of the least-squares line through (ln size, ln frac) of the
    // zero-dropped curve. A single distinct point has no line; score it 0.
    const EcdfCurve curve = complementary_ecdf(dist, true);
    if (curve.size() < 2) {
        out.loglog_r2 = 0.0;
        return out;
    }
    const double np = static_cast<double>(curve.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : curve) {
        sx += std::log(static_cast<double>(p.size));
        sy += std::log(p.frac_at_least);
    }
    const double mx = sx / np;
    const double my = sy / np;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : curve) {
        const double dx = std::log(static_cast<double>(p.size)) - mx;
        const double dy = std::log(p.frac_at_least) - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    out.loglog_r2 = (sxy * sxy) / (sxx * syy);
    return out;
}

std::vector<OverlayRow> overlay(const EcdfCurve& sim, const EcdfCurve& baseline) {
    if (sim.empty() || baseline.empty()) {
        throw ValidationError("overlay needs two non-empty curves");
    }
    std::vector<OverlayRow> rows;
    rows.reserve(sim.size() + baseline.size());
    for (const auto& p : sim) rows.push_back({"sim", p.size, p.frac_at_least});
    for (const auto& p : baseline) rows.push_back({"baseline", p.size, p.frac_at_least});
    return rows;
}

} // namespace commsim
