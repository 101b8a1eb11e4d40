#include <doctest.h>

#include <cmath>
#include <vector>

#include "commsim/errors.hpp"
#include "commsim/metrics.hpp"
#include "commsim/rng.hpp"

using namespace commsim;

TEST_CASE("complementary ecdf walks distinct sizes") {
    SUBCASE("all equal collapses to one point") {
        const EcdfCurve curve = complementary_ecdf({5, 5, 5}, false);
        REQUIRE(curve.size() == 1);
        CHECK(curve[0].size == 5);
        CHECK(curve[0].frac_at_least == 1.0);
    }
    SUBCASE("three distinct sizes") {
        const EcdfCurve curve = complementary_ecdf({1, 2, 4}, false);
        REQUIRE(curve.size() == 3);
        CHECK(curve[0].size == 1);
        CHECK(curve[0].frac_at_least == 1.0);
        CHECK(curve[1].size == 2);
        CHECK(curve[1].frac_at_least == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(curve[2].size == 4);
        CHECK(curve[2].frac_at_least == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("zero drop removes empty communities from the base") {
        const EcdfCurve curve = complementary_ecdf({0, 0, 3}, true);
        REQUIRE(curve.size() == 1);
        CHECK(curve[0].size == 3);
        CHECK(curve[0].frac_at_least == 1.0);
    }
    SUBCASE("zeros retained when not dropping") {
        const EcdfCurve curve = complementary_ecdf({0, 0, 3}, false);
        REQUIRE(curve.size() == 2);
        CHECK(curve[0].size == 0);
        CHECK(curve[0].frac_at_least == 1.0);
        CHECK(curve[1].frac_at_least == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("degenerate inputs are rejected") {
        CHECK_THROWS_AS(complementary_ecdf({}, false), ValidationError);
        CHECK_THROWS_AS(complementary_ecdf({0, 0}, true), ValidationError);
    }
    SUBCASE("fractions never increase and close on the max-share") {
        Rng rng(51);
        SizeDistribution dist;
        for (int i = 0; i < 300; ++i) dist.push_back(rng.below(40));
        const EcdfCurve curve = complementary_ecdf(dist, true);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].frac_at_least < curve[i - 1].frac_at_least);
            CHECK(curve[i].size > curve[i - 1].size);
        }
        CHECK(curve.front().frac_at_least == 1.0);
    }
}

namespace {

double gini_pairwise(const SizeDistribution& dist) {
    const std::size_t n = dist.size();
    double sum = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += dist[i];
        for (std::size_t j = 0; j < n; ++j) {
            diff += std::abs(double(dist[i]) - double(dist[j]));
        }
    }
    return diff / (2.0 * double(n) * double(n) * (sum / double(n)));
}

} // namespace

TEST_CASE("gini matches the pairwise oracle") {
    CHECK(gini_coefficient({7, 7, 7, 7}) == 0.0);
    CHECK_THROWS_AS(gini_coefficient({0, 0, 0}), ValidationError);

    Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.below(500);
        SizeDistribution dist;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t v = rng.bernoulli(0.2) ? 0 : rng.below(200) + 1;
            any |= v > 0;
            dist.push_back(v);
        }
        if (!any) dist[0] = 1;
        CHECK(gini_coefficient(dist) ==
              doctest::Approx(gini_pairwise(dist)).epsilon(1e-9));
    }
}

TEST_CASE("skew summary bundles the shape statistics") {
    SUBCASE("hand-checked small case") {
        const SkewSummary s = skew_summary({2, 4});
        CHECK(s.gini == doctest::Approx(gini_pairwise({2, 4})).epsilon(1e-12));
        CHECK(s.max_size == 4);
        CHECK(s.median_size == 3.0);
        CHECK(s.cv == doctest::Approx(1.0 / 3.0).epsilon(1e-12)); // sd 1, mean 3
    }
    SUBCASE("odd-length median and zero retention") {
        const SkewSummary s = skew_summary({0, 3, 9});
        CHECK(s.median_size == 3.0);
        CHECK(s.max_size == 9);
        CHECK(s.gini == doctest::Approx(gini_pairwise({0, 3, 9})).epsilon(1e-12));
    }
    SUBCASE("a single nonzero size still summarizes") {
        SizeDistribution lone(50, 0);
        lone[7] = 30;
        const SkewSummary s = skew_summary(lone);
        CHECK(s.gini == doctest::Approx(gini_pairwise(lone)).epsilon(1e-12));
        CHECK(s.max_size == 30);
        CHECK(s.median_size == 0.0);
        CHECK(s.loglog_r2 == 0.0); // one distinct nonzero point, no line
        CHECK_THROWS_AS(skew_summary({0, 0}), ValidationError);
    }
    SUBCASE("perfect power-law ecdf is perfectly linear in log-log") {
        // Distinct sizes 2,4,8,16 with fracs 1, 1/2, 1/4, 1/8: equal ln steps
        // on both axes.
        const SkewSummary s = skew_summary({2, 2, 2, 2, 4, 4, 8, 16});
        CHECK(s.loglog_r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("single distinct size has no line to fit") {
        const SkewSummary s = skew_summary({6, 6, 6});
        CHECK(s.loglog_r2 == 0.0);
        CHECK(s.cv == 0.0);
        CHECK(s.gini == 0.0);
    }
}

TEST_CASE("overlay concatenates both series untouched") {
    const EcdfCurve sim = complementary_ecdf({1, 2, 4}, false);
    const EcdfCurve base = complementary_ecdf({3, 3, 9}, false);
    const auto rows = overlay(sim, base);
    REQUIRE(rows.size() == sim.size() + base.size());
    for (std::size_t i = 0; i < sim.size(); ++i) {
        CHECK(rows[i].series == "sim");
        CHECK(rows[i].size == sim[i].size);
        CHECK(rows[i].frac_at_least == sim[i].frac_at_least);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& row = rows[sim.size() + i];
        CHECK(row.series == "baseline");
        CHECK(row.size == base[i].size);
        CHECK(row.frac_at_least == base[i].frac_at_least);
    }

    SUBCASE("identical curves produce mirrored series") {
        const auto twin = overlay(sim, sim);
        REQUIRE(twin.size() == 2 * sim.size());
        for (std::size_t i = 0; i < sim.size(); ++i) {
            CHECK(twin[i].size == twin[sim.size() + i].size);
            CHECK(twin[i].frac_at_least == twin[sim.size() + i].frac_at_least);
        }
    }
    SUBCASE("empty curves are rejected") {
        CHECK_THROWS_AS(overlay({}, base), ValidationError);
        CHECK_THROWS_AS(overlay(sim, {}), ValidationError);
    }
}
