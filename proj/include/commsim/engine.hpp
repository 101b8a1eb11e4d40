#pragma once
// Time-stepped simulation driver and parameter-grid sweeps.

#include <cstdint>
#include <string>
#include <vector>

#include "commsim/config.hpp"
#include "commsim/decision.hpp"
#include "commsim/exposure.hpp"
#include "commsim/population.hpp"
#include "commsim/rng.hpp"

namespace commsim {

struct RunResult {
    SizeDistribution final_sizes;
    std::vector<SizeDistribution> per_step_sizes; // filled when record_per_step
    ExposureStats exposure_stats;
    double wall_seconds = 0.0;
};

// One simulation state; step() advances it. Decisions are computed against
// start-of-step sizes and applied after every agent has decided, unless the
// config asks for sequential updates.
class Simulation {
public:
    explicit Simulation(const ModelConfig& cfg); // validates cfg
    void step();
    const Population& population() const { return pop_; }
    Population& population() { return pop_; } // scenario setup in tests
    const ExposureStats& stats() const { return stats_; }
    std::uint32_t steps_done() const { return steps_done_; }

private:
    void decide_agent(AgentId a);
    void apply(AgentId a, const Decision& d);

    ModelConfig cfg_;
    Population pop_;
    Rng rng_;
    ExposureScratch exposure_scratch_;
    DecisionScratch decision_scratch_;
    BenefitTable table_;
    ExposureStats stats_;
    ExposureSet exposure_;
    Decision decision_;
    std::vector<std::pair<AgentId, CommunityId>> pending_leaves_;
    std::vector<std::pair<AgentId, CommunityId>> pending_joins_;
    std::uint32_t steps_done_ = 0;
};

RunResult run(const ModelConfig& cfg);

// Cross-product sweep. Axis values are string tokens applied to the base
// draft via set_draft_param; the first axis varies slowest. Cell ids number
// the cross product row-major from 0.
struct SweepAxis {
    std::string name;
    std::vector<std::string> values;
};

struct SweepGrid {
    ConfigDraft base; // family must be set
    std::vector<SweepAxis> axes;
    std::uint32_t replicates = 1;
};

struct CellResult {
    std::size_t cell_id = 0;
    std::uint32_t replicate = 0;
    std::uint64_t seed = 0; // derived from (base seed, cell_id, replicate)
    std::vector<std::pair<std::string, std::string>> params; // axis name -> token
    ModelConfig config;
    RunResult run;
    std::string error; // non-empty when the cell failed
};

// Expands and validates every cell up front (throwing with the cell's
// coordinates on an invalid combination), then runs cells across `parallelism`
// worker threads. Results are ordered by cell then replicate regardless of
// scheduling; a cell that fails at runtime carries its error message and
// leaves the other cells untouched.
std::vector<CellResult> sweep(const SweepGrid& grid, unsigned parallelism);

// Parses {"base": {...config fields...}, "axes": [{"name": ..., "values":
// [...]}], "replicates": n}. Axis values may be JSON numbers or strings.
SweepGrid sweep_grid_from_json_text(std::string_view text);

} // namespace commsim
