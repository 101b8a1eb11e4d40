#pragma once

#include <cstdint>
#include <vector>

#include "commsim/population.hpp"
#include "commsim/rng.hpp"

namespace commsim {

// Communities an agent may consider this step. Sorted ascending, no
// duplicates. May include communities the agent already belongs to.
using ExposureSet = std::vector<CommunityId>;

enum class ExposureMode {
    null_random,         // every community independently with probability p_e
    social_random_share, // neighbors share random communities of theirs
    social_largest_share // neighbors share their largest communities
};

struct ExposureConfig {
    ExposureMode mode = ExposureMode::null_random;
    double p_e = 0.1;        // inclusion probability under null_random
    std::uint32_t m = 1;     // communities shared per sampled neighbor
    double fallback_p_e = 0.1; // random exposure for agents with no communities
};

// Reusable scratch space so the per-step hot loop does not allocate.
struct ExposureScratch {
    std::vector<std::uint32_t> stamp; // dedup marker per community
    std::uint32_t epoch = 0;
    std::vector<std::uint32_t> neighbors;
    std::vector<std::uint32_t> candidates;
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint32_t> picked;
    std::vector<std::uint32_t> fy;
};

// Running tally of the social exposure-set bound |set| <= sum_i(k_i * m).
struct ExposureStats {
    std::uint64_t sets_checked = 0;
    std::uint64_t bound_violations = 0;
};

// Number of neighbors sampled from a community of the given size:
// max(1, ceil(ln(size + 1))).
std::uint32_t neighbor_count(std::uint32_t community_size);

// Each community included independently with probability p_e.
ExposureSet null_exposure(const Population& pop, AgentId agent, double p_e, Rng& rng);

// Social exposure: sample neighbor_count(size) fellow members from each of
// the agent's communities; each sampled neighbor shares up to cfg.m of their
// other communities (random or largest by current size, per cfg.mode). An
// agent with no communities falls back to null_exposure at cfg.fallback_p_e.
ExposureSet social_exposure(const Population& pop, AgentId agent,
                            const ExposureConfig& cfg, Rng& rng);

// Allocation-free variants used by the engine.
void null_exposure_into(const Population& pop, AgentId agent, double p_e, Rng& rng,
                        ExposureSet& out);
void social_exposure_into(const Population& pop, AgentId agent, const ExposureConfig& cfg,
                          Rng& rng, ExposureSet& out, ExposureScratch& scratch,
                          ExposureStats* stats);

} // namespace commsim
