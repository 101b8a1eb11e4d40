#include "commsim/report.hpp"

#include <algorithm>
#include <limits>

#include "commsim/errors.hpp"
#include "commsim/io.hpp"
#include "commsim/metrics.hpp"

namespace commsim {

namespace {

void check_uniform_params(const std::vector<CellResult>& cells) {
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].params.size() != cells[0].params.size()) {
            throw ValidationError("sweep rows disagree on parameter columns");
        }
        for (std::size_t p = 0; p < cells[i].params.size(); ++p) {
            if (cells[i].params[p].first != cells[0].params[p].first) {
                throw ValidationError("sweep rows disagree on parameter columns");
            }
        }
    }
}

} // namespace

std::string sweep_csv(const std::vector<CellResult>& cells) {
    if (cells.empty()) throw ValidationError("no sweep results to render");
    check_uniform_params(cells);

    std::string out = "cell_id,replicate,seed";
    for (const auto& [name, token] : cells.front().params) {
        out.push_back(',');
        out.append(name);
    }
    out += ",community_id,final_size\n";

    for (const auto& cell : cells) {
        if (!cell.error.empty()) continue;
        std::string prefix;
        append_u64(prefix, cell.cell_id);
        prefix.push_back(',');
        append_u64(prefix, cell.replicate);
        prefix.push_back(',');
        append_u64(prefix, cell.seed);
        for (const auto& [name, token] : cell.params) {
            prefix.push_back(',');
            prefix.append(token);
        }
        prefix.push_back(',');
        for (std::size_t c = 0; c < cell.run.final_sizes.size(); ++c) {
            out.append(prefix);
            append_u64(out, c);
            out.push_back(',');
            append_u64(out, cell.run.final_sizes[c]);
            out.push_back('\n');
        }
    }
    return out;
}

std::string summary_csv(const std::vector<CellResult>& cells) {
    if (cells.empty()) throw ValidationError("no sweep results to render");
    std::string out = "cell_id,gini,max,median,cv,loglog_r2\n";
    for (const auto& cell : cells) {
        if (!cell.error.empty()) continue;
        const SizeDistribution& sizes = cell.run.final_sizes;
        SkewSummary s;
        try {
            s = skew_summary(sizes);
        } catch (const ValidationError&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s.gini = s.cv = s.loglog_r2 = nan;
            s.max_size = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
            std::vector<std::uint32_t> sorted(sizes);
            std::sort(sorted.begin(), sorted.end());
            const std::size_t n = sorted.size();
            s.median_size =
                n == 0 ? 0.0
                : (n % 2 == 1 ? static_cast<double>(sorted[n / 2])
                              : (static_cast<double>(sorted[n / 2 - 1]) + sorted[n / 2]) / 2.0);
        }
        append_u64(out, cell.cell_id);
        out.push_back(',');
        append_double(out, s.gini);
        out.push_back(',');
        append_u64(out, s.max_size);
        out.push_back(',');
        append_double(out, s.median_size);
        out.push_back(',');
        append_double(out, s.cv);
        out.push_back(',');
        append_double(out, s.loglog_r2);
        out.push_back('\n');
    }
    return out;
}

std::string per_step_csv(const std::vector<SizeDistribution>& per_step) {
    std::string out = "step,community_id,size\n";
    for (std::size_t s = 0; s < per_step.size(); ++s) {
        for (std::size_t c = 0; c < per_step[s].size(); ++c) {
            append_u64(out, s + 1);
            out.push_back(',');
            append_u64(out, c);
            out.push_back(',');
            append_u64(out, per_step[s][c]);
            out.push_back('\n');
        }
    }
    return out;
}

} // namespace commsim
