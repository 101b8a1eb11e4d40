#include <doctest.h>

#include <random>
#include <set>
#include <utility>

#include "commsim/errors.hpp"
#include "commsim/population.hpp"

using namespace commsim;

TEST_CASE("fresh population is empty with unit ages") {
    Population pop(5, 3);
    CHECK(pop.n_agents() == 5);
    CHECK(pop.n_communities() == 3);
    CHECK(pop.step() == 0);
    CHECK(pop.total_memberships() == 0);
    for (CommunityId c = 0; c < 3; ++c) {
        CHECK(pop.community_size(c) == 0);
        CHECK(pop.community_age(c) == 1);
    }
    CHECK(pop.snapshot_sizes() == SizeDistribution({0, 0, 0}));
    CHECK(pop.check_consistent());
}

TEST_CASE("join and leave update both directions") {
    Population pop(4, 2);
    pop.join(1, 0);
    CHECK(pop.is_member(1, 0));
    CHECK(pop.community_size(0) == 1);
    CHECK(pop.communities(1) == std::vector<CommunityId>({0}));

    pop.join(1, 0); // idempotent
    CHECK(pop.community_size(0) == 1);
    CHECK(pop.total_memberships() == 1);

    pop.join(1, 1);
    pop.join(3, 0);
    CHECK(pop.communities(1) == std::vector<CommunityId>({0, 1}));
    CHECK(pop.community_size(0) == 2);

    pop.leave(1, 0);
    CHECK_FALSE(pop.is_member(1, 0));
    CHECK(pop.community_size(0) == 1);
    CHECK(pop.is_member(3, 0));
    CHECK(pop.communities(1) == std::vector<CommunityId>({1}));

    pop.leave(1, 0); // idempotent
    CHECK(pop.community_size(0) == 1);
    CHECK(pop.check_consistent());
}

TEST_CASE("membership list stays sorted ascending") {
    Population pop(2, 6);
    pop.join(0, 4);
    pop.join(0, 1);
    pop.join(0, 5);
    pop.join(0, 0);
    CHECK(pop.communities(0) == std::vector<CommunityId>({0, 1, 4, 5}));
    pop.leave(0, 1);
    CHECK(pop.communities(0) == std::vector<CommunityId>({0, 4, 5}));
}

TEST_CASE("advance_step ages every community") {
    Population pop(2, 3);
    pop.advance_step();
    pop.advance_step();
    CHECK(pop.step() == 2);
    for (CommunityId c = 0; c < 3; ++c) CHECK(pop.community_age(c) == 3);
}

TEST_CASE("unknown ids are rejected") {
    Population pop(2, 3);
    CHECK_THROWS_AS(pop.join(2, 0), ValidationError);
    CHECK_THROWS_AS(pop.join(0, 3), ValidationError);
    CHECK_THROWS_AS(pop.leave(5, 1), ValidationError);
    CHECK_THROWS_AS((void)pop.community_size(3), ValidationError);
    CHECK_THROWS_AS((void)pop.is_member(0, 7), ValidationError);
}

TEST_CASE("random churn matches a set-based reference") {
    Population pop(50, 10);
    std::set<std::pair<AgentId, CommunityId>> ref;
    std::mt19937 gen(99);
    for (int op = 0; op < 2000; ++op) {
        const AgentId a = gen() % 50;
        const CommunityId c = gen() % 10;
        if (gen() % 2 == 0) {
            pop.join(a, c);
            ref.insert({a, c});
        } else {
            pop.leave(a, c);
            ref.erase({a, c});
        }
    }
    CHECK(pop.total_memberships() == ref.size());
    for (AgentId a = 0; a < 50; ++a) {
        for (CommunityId c = 0; c < 10; ++c) {
            CHECK(pop.is_member(a, c) == (ref.count({a, c}) > 0));
        }
    }
    SizeDistribution sizes(10, 0);
    for (const auto& [a, c] : ref) ++sizes[c];
    CHECK(pop.snapshot_sizes() == sizes);
    CHECK(pop.check_consistent());
}
