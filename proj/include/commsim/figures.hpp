#pragma once
// Named sweep presets, one per published figure grid.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "commsim/engine.hpp"

namespace commsim {

struct FigureSpec {
    std::string id;
    std::string summary;
    SweepGrid grid;      // first axis = grid rows, second = grid columns
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::size_t n_cells = 0;
};

const std::vector<std::string>& figure_ids();

// Throws ValidationError for an unknown id. "fig7" and "figA1" name the same
// grid.
FigureSpec figure_spec(std::string_view id);

} // namespace commsim
