#pragma once
// CSV rendering of sweep results.

#include <string>
#include <vector>

#include "commsim/engine.hpp"

namespace commsim {

// cell_id,replicate,seed,<axis params...>,community_id,final_size — one row
// per community per (cell, replicate). Failed cells contribute no rows.
std::string sweep_csv(const std::vector<CellResult>& cells);

// cell_id,gini,max,median,cv,loglog_r2 — one row per (cell, replicate), in
// order, so cell_id repeats when replicates > 1. Degenerate distributions
// (fewer than two nonzero sizes) get nan for gini/cv/loglog_r2.
std::string summary_csv(const std::vector<CellResult>& cells);

// step,community_id,size long format for one run's recorded snapshots.
std::string per_step_csv(const std::vector<SizeDistribution>& per_step);

} // namespace commsim
