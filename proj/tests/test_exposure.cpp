#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "commsim/exposure.hpp"
#include "commsim/population.hpp"
#include "commsim/rng.hpp"

using namespace commsim;

TEST_CASE("neighbor_count follows max(1, ceil(ln(size+1)))") {
    CHECK(neighbor_count(0) == 1);
    CHECK(neighbor_count(1) == 1);   // ln 2 = 0.69
    CHECK(neighbor_count(2) == 2);   // ln 3 = 1.10
    CHECK(neighbor_count(7) == 3);   // ln 8 = 2.08
    CHECK(neighbor_count(147) == 5); // ln 148 = 4.997
    CHECK(neighbor_count(148) == 6); // ln 149 = 5.004
    CHECK(neighbor_count(8102) == 9); // ln 8103 = 8.99999
    for (std::uint32_t s = 1; s < 10000; ++s) {
        CHECK(neighbor_count(s) >= neighbor_count(s - 1));
    }
}

TEST_CASE("null exposure hits each community independently") {
    Population pop(1, 200);
    Rng rng(12);

    SUBCASE("p_e = 0 exposes nothing") {
        CHECK(null_exposure(pop, 0, 0.0, rng).empty());
    }
    SUBCASE("p_e = 1 exposes everything") {
        const ExposureSet set = null_exposure(pop, 0, 1.0, rng);
        REQUIRE(set.size() == 200);
        for (CommunityId c = 0; c < 200; ++c) CHECK(set[c] == c);
    }
    SUBCASE("mean set size matches the binomial expectation") {
        double total = 0.0;
        const int trials = 1000;
        for (int t = 0; t < trials; ++t) {
            total += static_cast<double>(null_exposure(pop, 0, 0.1, rng).size());
        }
        // Binomial(200, .1): mean 20, per-draw sd 4.24, SE over 1000 trials
        // 0.134; allow 3 SE.
        CHECK(std::abs(total / trials - 20.0) < 0.402);
    }
}

namespace {

// Focal agent 0 shares community 0 with agent 1; agent 1 also belongs to
// communities 1, 2, 3 filled to sizes 3, 50, 7.
Population neighbor_with_three_others() {
    Population pop(60, 4);
    pop.join(0, 0);
    pop.join(1, 0);
    for (CommunityId c = 1; c < 4; ++c) pop.join(1, c);
    AgentId next = 2;
    for (int i = 0; i < 2; ++i) pop.join(next++, 1);  // size 3
    for (int i = 0; i < 49; ++i) pop.join(next++, 2); // size 50
    for (int i = 0; i < 6; ++i) pop.join(next++, 3);  // size 7
    return pop;
}

} // namespace

TEST_CASE("largest share picks the neighbor's biggest communities") {
    Population pop = neighbor_with_three_others();
    ExposureConfig cfg;
    cfg.mode = ExposureMode::social_largest_share;
    cfg.m = 2;
    Rng rng(4);
    // Sizes {3, 50, 7} with m = 2: communities 2 and 3, never 1.
    for (int t = 0; t < 50; ++t) {
        CHECK(social_exposure(pop, 0, cfg, rng) == ExposureSet({2, 3}));
    }
}

TEST_CASE("random share includes each candidate at the sampling rate") {
    Population pop = neighbor_with_three_others();
    ExposureConfig cfg;
    cfg.mode = ExposureMode::social_random_share;
    cfg.m = 2;
    Rng rng(8);
    std::vector<int> hits(4, 0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        for (CommunityId c : social_exposure(pop, 0, cfg, rng)) ++hits[c];
    }
    CHECK(hits[0] == 0); // the shared community itself is never offered back
    // 2 of 3 shared uniformly: rate 2/3, SE 0.00333, allow 3 SE.
    for (CommunityId c = 1; c < 4; ++c) {
        CHECK(std::abs(hits[c] / double(trials) - 2.0 / 3.0) < 0.011);
    }
}

TEST_CASE("share modes coincide when the neighbor has at most m others") {
    Population pop(10, 3);
    pop.join(0, 0);
    pop.join(1, 0);
    pop.join(1, 1);
    pop.join(1, 2);
    ExposureConfig cfg;
    cfg.m = 2;

    Rng rng_random(77), rng_largest(77);
    cfg.mode = ExposureMode::social_random_share;
    const ExposureSet via_random = social_exposure(pop, 0, cfg, rng_random);
    cfg.mode = ExposureMode::social_largest_share;
    const ExposureSet via_largest = social_exposure(pop, 0, cfg, rng_largest);

    CHECK(via_random == ExposureSet({1, 2}));
    CHECK(via_random == via_largest);
    // Neither mode drew anything, so the streams stay aligned.
    CHECK(rng_random.next_u64() == rng_largest.next_u64());
}

TEST_CASE("neighbors are sampled uniformly") {
    // Community 0 holds the focal agent plus 11 others; each other agent has
    // one distinct extra community, so the exposure set names exactly the
    // sampled neighbors. k = neighbor_count(12) = 3 of 11.
    Population pop(12, 12);
    for (AgentId a = 0; a < 12; ++a) pop.join(a, 0);
    for (AgentId a = 1; a < 12; ++a) pop.join(a, a);

    ExposureConfig cfg;
    cfg.mode = ExposureMode::social_random_share;
    cfg.m = 1;
    Rng rng(13);
    std::vector<int> hits(12, 0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const ExposureSet set = social_exposure(pop, 0, cfg, rng);
        CHECK(set.size() == 3);
        for (CommunityId c : set) ++hits[c];
    }
    CHECK(hits[0] == 0);
    // Inclusion rate 3/11 per neighbor, SE 0.00315; allow 3 SE.
    for (std::size_t c = 1; c < 12; ++c) {
        CHECK(std::abs(hits[c] / double(trials) - 3.0 / 11.0) < 0.0095);
    }
}

TEST_CASE("agents without communities fall back to random exposure") {
    Population pop(3, 40);
    for (CommunityId c = 0; c < 40; ++c) pop.join(2, c); // unrelated agent

    ExposureConfig cfg;
    cfg.mode = ExposureMode::social_largest_share;
    cfg.fallback_p_e = 0.15;

    Rng social_rng(21), null_rng(21);
    for (int t = 0; t < 200; ++t) {
        CHECK(social_exposure(pop, 0, cfg, social_rng) ==
              null_exposure(pop, 0, 0.15, null_rng));
    }
}

TEST_CASE("exposure sets are sorted, unique, and within the sharing bound") {
    Population pop(40, 15);
    Rng setup(2);
    for (AgentId a = 0; a < 40; ++a) {
        for (CommunityId c = 0; c < 15; ++c) {
            if (setup.bernoulli(0.3)) pop.join(a, c);
        }
    }
    ExposureConfig cfg;
    cfg.mode = ExposureMode::social_random_share;
    cfg.m = 2;
    ExposureStats stats;
    ExposureScratch scratch;
    Rng rng(3);
    ExposureSet set;
    for (int t = 0; t < 500; ++t) {
        const AgentId a = t % 40;
        social_exposure_into(pop, a, cfg, rng, set, scratch, &stats);
        CHECK(std::is_sorted(set.begin(), set.end()));
        CHECK(std::adjacent_find(set.begin(), set.end()) == set.end());
        std::uint64_t bound = 0;
        for (CommunityId c : pop.communities(a)) {
            bound += std::uint64_t(neighbor_count(pop.community_size(c))) * cfg.m;
        }
        if (!pop.communities(a).empty()) CHECK(set.size() <= bound);
    }
    CHECK(stats.sets_checked > 0);
    CHECK(stats.bound_violations == 0);
}
