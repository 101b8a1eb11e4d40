#pragma once

#include <cstdint>
#include <vector>

namespace commsim {

using AgentId = std::uint32_t;
using CommunityId = std::uint32_t;

// One entry per community: how many members it has at a measurement point.
using SizeDistribution = std::vector<std::uint32_t>;

// Mutable world state of one simulation run: the agent/community membership
// relation plus community ages and the step counter.
//
// Storage is laid out for the hot paths: O(1) size queries, O(1) membership
// tests, O(1) uniform member sampling, O(1) amortized join/leave. Communities
// never die; a community whose size drops to 0 stays joinable.
class Population {
public:
    // All communities exist from step 0 with age 1; agents start with no
    // memberships.
    Population(std::uint32_t n_agents, std::uint32_t n_communities);

    std::uint32_t n_agents() const { return n_agents_; }
    std::uint32_t n_communities() const { return n_communities_; }

    std::uint64_t step() const { return step_; }
    std::uint32_t community_age(CommunityId c) const { return ages_[check_community(c)]; }

    std::uint32_t community_size(CommunityId c) const {
        return static_cast<std::uint32_t>(members_[check_community(c)].size());
    }

    bool is_member(AgentId a, CommunityId c) const {
        return member_slot(check_agent(a), check_community(c)) != 0;
    }

    // Members of c, in storage order (deterministic but arbitrary).
    const std::vector<AgentId>& members(CommunityId c) const {
        return members_[check_community(c)];
    }

    // Communities of a, ascending by id.
    const std::vector<CommunityId>& communities(AgentId a) const {
        return memberships_[check_agent(a)];
    }

    // Idempotent: joining a community the agent already belongs to is a no-op.
    void join(AgentId a, CommunityId c);

    // Idempotent: leaving a community the agent is not in is a no-op.
    void leave(AgentId a, CommunityId c);

    // Advances the clock: step counter +1, every community age +1.
    void advance_step();

    // Current size of every community, ascending by community id.
    SizeDistribution snapshot_sizes() const;

    // Total number of (agent, community) membership pairs.
    std::uint64_t total_memberships() const { return total_memberships_; }

    // Rebuilds the relation from scratch and cross-checks both directions
    // and the slot index. For tests; O(agents * communities).
    bool check_consistent() const;

private:
    std::uint32_t check_agent(AgentId a) const;
    std::uint32_t check_community(CommunityId c) const;

    // Position of a in members_[c], plus 1; 0 means not a member.
    std::uint32_t& member_slot(AgentId a, CommunityId c) {
        return slots_[static_cast<std::size_t>(a) * n_communities_ + c];
    }
    std::uint32_t member_slot(AgentId a, CommunityId c) const {
        return slots_[static_cast<std::size_t>(a) * n_communities_ + c];
    }

    std::uint32_t n_agents_;
    std::uint32_t n_communities_;
    std::uint64_t step_ = 0;
    std::uint64_t total_memberships_ = 0;
    std::vector<std::vector<AgentId>> members_;      // per community
    std::vector<std::vector<CommunityId>> memberships_; // per agent, sorted
    std::vector<std::uint32_t> slots_;
    std::vector<std::uint32_t> ages_;
};

} // namespace commsim
