#include "commsim/engine.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include <json.hpp>

#include "commsim/errors.hpp"

namespace commsim {

Simulation::Simulation(const ModelConfig& cfg)
    : cfg_(cfg),
      pop_(cfg.n_agents, cfg.n_communities),
      rng_(cfg.seed) {
    validate(cfg_);
}

void Simulation::decide_agent(AgentId a) {
    decision_.joins.clear();
    decision_.leaves.clear();

    // Per-agent draw order: exit draws, then exposure draws, then join/rank
    // draws. IEB families have no chance exits; rank covers both directions.
    const bool random_rule = !cfg_.uses_ieb();
    if (random_rule) {
        random_exits(pop_, a, cfg_.random_decision.p_l, rng_, decision_.leaves);
    }

    if (cfg_.exposure.mode == ExposureMode::null_random) {
        null_exposure_into(pop_, a, cfg_.exposure.p_e, rng_, exposure_);
    } else {
        social_exposure_into(pop_, a, cfg_.exposure, rng_, exposure_, exposure_scratch_,
                             &stats_);
    }

    if (random_rule) {
        random_joins(exposure_, cfg_.random_decision.p_j, rng_, decision_.joins);
    } else {
        if (cfg_.sequential) table_.build(pop_, cfg_.benefit);
        ieb_decide_into(pop_, a, exposure_, cfg_.benefit, table_, rng_, decision_,
                        decision_scratch_);
    }
}

void Simulation::apply(AgentId a, const Decision& d) {
    for (CommunityId c : d.leaves) pop_.leave(a, c);
    for (CommunityId c : d.joins) pop_.join(a, c);
}

void Simulation::step() {
    const bool synchronous = !cfg_.sequential;
    if (synchronous) {
        pending_leaves_.clear();
        pending_joins_.clear();
        if (cfg_.uses_ieb()) table_.build(pop_, cfg_.benefit);
    }

    const std::uint32_t n = pop_.n_agents();
    for (AgentId a = 0; a < n; ++a) {
        decide_agent(a);
        if (synchronous) {
            for (CommunityId c : decision_.leaves) pending_leaves_.emplace_back(a, c);
            for (CommunityId c : decision_.joins) pending_joins_.emplace_back(a, c);
        } else {
            apply(a, decision_);
        }
    }

    if (synchronous) {
        // All leaves land before all joins; each agent's own leave precedes
        // its own join, so leave+join of one community within a step sticks.
        for (const auto& [a, c] : pending_leaves_) pop_.leave(a, c);
        for (const auto& [a, c] : pending_joins_) pop_.join(a, c);
    }

    pop_.advance_step();
    ++steps_done_;
}

RunResult run(const ModelConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    Simulation sim(cfg);
    RunResult result;
    if (cfg.record_per_step) result.per_step_sizes.reserve(cfg.steps);
    for (std::uint32_t s = 0; s < cfg.steps; ++s) {
        sim.step();
        if (cfg.record_per_step) result.per_step_sizes.push_back(sim.population().snapshot_sizes());
    }
    result.final_sizes = sim.population().snapshot_sizes();
    result.exposure_stats = sim.stats();
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

struct CellSpec {
    std::size_t cell_id;
    std::vector<std::pair<std::string, std::string>> params;
    ModelConfig config; // seed still the base seed; per-task seed derived later
};

std::vector<CellSpec> expand_grid(const SweepGrid& grid) {
    std::size_t n_cells = 1;
    for (const auto& axis : grid.axes) {
        if (axis.values.empty()) {
            throw ValidationError("sweep axis " + axis.name + " has no values");
        }
        n_cells *= axis.values.size();
    }
    if (grid.replicates == 0) throw ValidationError("replicates must be positive");

    for (const auto& axis : grid.axes) {
        if (axis.name == "seed") {
            throw ValidationError("seed cannot be a sweep axis; use replicates");
        }
    }

    std::vector<CellSpec> cells;
    cells.reserve(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        CellSpec spec;
        spec.cell_id = cell;
        ConfigDraft draft = grid.base;
        // Row-major: first axis varies slowest.
        std::size_t stride = n_cells;
        for (const auto& axis : grid.axes) {
            stride /= axis.values.size();
            const std::string& token = axis.values[(cell / stride) % axis.values.size()];
            set_draft_param(draft, axis.name, token);
            spec.params.emplace_back(axis.name, token);
        }
        try {
            spec.config = finalize(draft);
        } catch (const std::exception& e) {
            std::string where = "cell " + std::to_string(cell);
            for (const auto& [name, token] : spec.params) {
                where += " " + name + "=" + token;
            }
            throw ValidationError(where + ": " + e.what());
        }
        cells.push_back(std::move(spec));
    }
    return cells;
}

} // namespace

std::vector<CellResult> sweep(const SweepGrid& grid, unsigned parallelism) {
    const std::vector<CellSpec> cells = expand_grid(grid);
    const std::uint64_t base_seed = grid.base.seed.value_or(1);

    std::vector<CellResult> results(cells.size() * grid.replicates);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::uint32_t r = 0; r < grid.replicates; ++r) {
            CellResult& out = results[i * grid.replicates + r];
            out.cell_id = cells[i].cell_id;
            out.replicate = r;
            out.params = cells[i].params;
            out.config = cells[i].config;
            out.seed = derive_seed(base_seed, cells[i].cell_id, r);
            out.config.seed = out.seed;
        }
    }

    const unsigned workers =
        std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(results.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= results.size()) return;
            CellResult& task = results[i];
            try {
                task.run = run(task.config);
            } catch (const std::exception& e) {
                std::string where = "cell " + std::to_string(task.cell_id);
                for (const auto& [name, token] : task.params) {
                    where += " " + name + "=" + token;
                }
                task.error = where + ": " + e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

SweepGrid sweep_grid_from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("sweep config must be a JSON object");

    SweepGrid grid;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "base") {
                grid.base = draft_from_json_text(value.dump());
            } else if (key == "axes") {
                if (!value.is_array()) throw ParseError("axes must be an array");
                for (const auto& axis_doc : value) {
                    SweepAxis axis;
                    axis.name = axis_doc.at("name").get<std::string>();
                    for (const auto& v : axis_doc.at("values")) {
                        axis.values.push_back(v.is_string() ? v.get<std::string>()
                                                            : v.dump());
                    }
                    grid.axes.push_back(std::move(axis));
                }
            } else if (key == "replicates") {
                grid.replicates = value.get<std::uint32_t>();
            } else {
                throw ValidationError("unknown sweep config key: " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad sweep config value: ") + e.what());
    }
    return grid;
}

} // namespace commsim
