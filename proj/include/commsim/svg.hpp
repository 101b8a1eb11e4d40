#pragma once
// Minimal SVG rendering of log-log eCDF overlay grids. Plot-data CSV is the
// canonical output; this exists so figure grids can be eyeballed directly.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "commsim/metrics.hpp"

namespace commsim {

struct Panel {
    std::string title;
    EcdfCurve sim;
    EcdfCurve baseline; // empty = no overlay
};

// Lays panels out in a grid with n_cols columns, shared log-log axes across
// all panels, sim in blue and baseline in orange.
std::string render_grid_svg(const std::vector<Panel>& panels, std::size_t n_cols,
                            std::string_view title);

} // namespace commsim
