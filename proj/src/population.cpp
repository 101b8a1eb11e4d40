#include "commsim/population.hpp"

#include <algorithm>
#include <string>

#include "commsim/errors.hpp"

namespace commsim {

Population::Population(std::uint32_t n_agents, std::uint32_t n_communities)
    : n_agents_(n_agents), n_communities_(n_communities) {
    if (n_agents == 0) throw ValidationError("population needs at least one agent");
    if (n_communities == 0) throw ValidationError("population needs at least one community");
    members_.resize(n_communities);
    memberships_.resize(n_agents);
    slots_.assign(static_cast<std::size_t>(n_agents) * n_communities, 0);
    ages_.assign(n_communities, 1);
}

std::uint32_t Population::check_agent(AgentId a) const {
    if (a >= n_agents_) {
        throw ValidationError("unknown agent id " + std::to_string(a));
    }
    return a;
}

std::uint32_t Population::check_community(CommunityId c) const {
    if (c >= n_communities_) {
        throw ValidationError("unknown community id " + std::to_string(c));
    }
    return c;
}

void Population::join(AgentId a, CommunityId c) {
    check_agent(a);
    check_community(c);
    std::uint32_t& slot = member_slot(a, c);
    if (slot != 0) return;
    members_[c].push_back(a);
    slot = static_cast<std::uint32_t>(members_[c].size());
    auto& list = memberships_[a];
    list.insert(std::lower_bound(list.begin(), list.end(), c), c);
    ++total_memberships_;
}

void Population::leave(AgentId a, CommunityId c) {
    check_agent(a);
    check_community(c);
    std::uint32_t& slot = member_slot(a, c);
    if (slot == 0) return;
    // Swap-pop from the member vector, fixing the moved agent's slot.
    auto& vec = members_[c];
    std::uint32_t idx = slot - 1;
    AgentId moved = vec.back();
    vec[idx] = moved;
    vec.pop_back();
    member_slot(moved, c) = idx + 1;
    slot = 0;
    auto& list = memberships_[a];
    list.erase(std::lower_bound(list.begin(), list.end(), c));
    --total_memberships_;
}

void Population::advance_step() {
    ++step_;
    for (auto& age : ages_) ++age;
}

SizeDistribution Population::snapshot_sizes() const {
    SizeDistribution sizes(n_communities_);
    for (std::uint32_t c = 0; c < n_communities_; ++c) {
        sizes[c] = static_cast<std::uint32_t>(members_[c].size());
    }
    return sizes;
}

bool Population::check_consistent() const {
    std::uint64_t edges = 0;
    for (std::uint32_t c = 0; c < n_communities_; ++c) {
        for (std::uint32_t i = 0; i < members_[c].size(); ++i) {
            AgentId a = members_[c][i];
            if (a >= n_agents_) return false;
            if (member_slot(a, c) != i + 1) return false;
            const auto& list = memberships_[a];
            if (!std::binary_search(list.begin(), list.end(), c)) return false;
            ++edges;
        }
    }
    std::uint64_t edges_from_agents = 0;
    for (std::uint32_t a = 0; a < n_agents_; ++a) {
        const auto& list = memberships_[a];
        if (!std::is_sorted(list.begin(), list.end())) return false;
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) return false;
        for (CommunityId c : list) {
            if (c >= n_communities_) return false;
            if (member_slot(a, c) == 0) return false;
        }
        edges_from_agents += list.size();
    }
    return edges == edges_from_agents && edges == total_memberships_;
}

} // namespace commsim
