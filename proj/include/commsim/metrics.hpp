#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commsim/population.hpp"

namespace commsim {

// Complementary eCDF: for each distinct size, the fraction of communities at
// least that large. Sizes ascending, fractions non-increasing, first
// fraction always 1.
struct EcdfPoint {
    std::uint32_t size;
    double frac_at_least;
};
using EcdfCurve = std::vector<EcdfPoint>;

struct SkewSummary {
    double gini = 0.0;
    std::uint32_t max_size = 0;
    double median_size = 0.0;
    double cv = 0.0;        // coefficient of variation (population sd / mean)
    double loglog_r2 = 0.0; // linearity of the log-log complementary eCDF
};

// drop_zeros removes size-0 communities before computing fractions (log-log
// plots cannot show them). Throws on an empty distribution, or when nothing
// survives the zero drop.
EcdfCurve complementary_ecdf(const SizeDistribution& dist, bool drop_zeros);

// Gini and cv keep zero-size communities; loglog_r2 is fit through the
// distinct points of the zero-dropped eCDF, unweighted, and is 0 when fewer
// than two such points exist. Throws only when every size is zero.
SkewSummary skew_summary(const SizeDistribution& dist);

// Gini coefficient over all entries (zeros included), sorted-rank formula.
double gini_coefficient(const SizeDistribution& dist);

// Long-format overlay of a simulated curve and an empirical baseline curve,
// ready for log-log plotting. Point values pass through untouched.
struct OverlayRow {
    std::string series; // "sim" or "baseline"
    std::uint32_t size;
    double frac_at_least;
};
std::vector<OverlayRow> overlay(const EcdfCurve& sim, const EcdfCurve& baseline);

} // namespace commsim
