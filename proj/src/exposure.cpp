#include "commsim/exposure.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "commsim/sampling.hpp"

namespace commsim {

std::uint32_t neighbor_count(std::uint32_t community_size) {
    double k = std::ceil(std::log(static_cast<double>(community_size) + 1.0));
    return k < 1.0 ? 1u : static_cast<std::uint32_t>(k);
}

namespace {

void mark_and_collect(CommunityId c, ExposureScratch& s, ExposureSet& out) {
    if (s.stamp[c] != s.epoch) {
        s.stamp[c] = s.epoch;
        out.push_back(c);
    }
}

void begin_set(const Population& pop, ExposureScratch& s) {
    if (s.stamp.size() != pop.n_communities()) {
        s.stamp.assign(pop.n_communities(), 0);
        s.epoch = 0;
    }
    if (++s.epoch == 0) { // epoch wrapped
        std::fill(s.stamp.begin(), s.stamp.end(), 0u);
        s.epoch = 1;
    }
}

// k distinct members of c other than the focal agent, appended to out.
// Takes everyone when the pool is no bigger than k.
void sample_neighbors(const Population& pop, CommunityId c, AgentId focal,
                      std::uint32_t k, Rng& rng, std::vector<std::uint32_t>& out) {
    out.clear();
    const auto& members = pop.members(c);
    const std::uint32_t size = static_cast<std::uint32_t>(members.size());
    if (size <= 1) return;
    const std::uint32_t pool = size - 1;
    if (k >= pool) {
        for (AgentId a : members) {
            if (a != focal) out.push_back(a);
        }
        return;
    }
    while (out.size() < k) {
        AgentId a = members[rng.below(size)];
        if (a == focal) continue;
        if (std::find(out.begin(), out.end(), a) != out.end()) continue;
        out.push_back(a);
    }
}

} // namespace

void null_exposure_into(const Population& pop, AgentId agent, double p_e, Rng& rng,
                        ExposureSet& out) {
    (void)agent;
    out.clear();
    for (CommunityId c = 0; c < pop.n_communities(); ++c) {
        if (rng.bernoulli(p_e)) out.push_back(c);
    }
}

ExposureSet null_exposure(const Population& pop, AgentId agent, double p_e, Rng& rng) {
    ExposureSet out;
    null_exposure_into(pop, agent, p_e, rng, out);
    return out;
}

void social_exposure_into(const Population& pop, AgentId agent, const ExposureConfig& cfg,
                          Rng& rng, ExposureSet& out, ExposureScratch& scratch,
                          ExposureStats* stats) {
    out.clear();
    const auto& own = pop.communities(agent);
    if (own.empty()) {
        null_exposure_into(pop, agent, cfg.fallback_p_e, rng, out);
        return;
    }

    begin_set(pop, scratch);
    std::uint64_t bound = 0;

    for (CommunityId c : own) {
        const std::uint32_t k = neighbor_count(pop.community_size(c));
        bound += static_cast<std::uint64_t>(k) * cfg.m;
        sample_neighbors(pop, c, agent, k, rng, scratch.neighbors);

        for (AgentId nb : scratch.neighbors) {
            const auto& theirs = pop.communities(nb);
            // The community the neighbor was sampled through is not shared.
            const std::uint32_t pos_c = static_cast<std::uint32_t>(
                std::lower_bound(theirs.begin(), theirs.end(), c) - theirs.begin());
            const std::uint32_t n_others = static_cast<std::uint32_t>(theirs.size()) - 1;
            if (n_others == 0) continue;

            auto other_at = [&](std::uint32_t i) { return theirs[i < pos_c ? i : i + 1]; };

            if (n_others <= cfg.m) {
                for (std::uint32_t i = 0; i < n_others; ++i) {
                    mark_and_collect(other_at(i), scratch, out);
                }
            } else if (cfg.mode == ExposureMode::social_random_share) {
                sample_k_of_n(n_others, cfg.m, rng, scratch.fy, scratch.picked);
                for (std::uint32_t i : scratch.picked) {
                    mark_and_collect(other_at(i), scratch, out);
                }
            } else {
                scratch.sizes.clear();
                for (std::uint32_t i = 0; i < n_others; ++i) {
                    scratch.sizes.push_back(pop.community_size(other_at(i)));
                }
                top_k_indices(scratch.sizes, cfg.m, rng, scratch.fy, scratch.picked);
                for (std::uint32_t i : scratch.picked) {
                    mark_and_collect(other_at(i), scratch, out);
                }
            }
        }
    }

    assert(out.size() <= bound);
    if (stats != nullptr) {
        ++stats->sets_checked;
        if (out.size() > bound) ++stats->bound_violations;
    }
    std::sort(out.begin(), out.end());
}

ExposureSet social_exposure(const Population& pop, AgentId agent,
                            const ExposureConfig& cfg, Rng& rng) {
    ExposureSet out;
    ExposureScratch scratch;
    social_exposure_into(pop, agent, cfg, rng, out, scratch, nullptr);
    return out;
}

} // namespace commsim
