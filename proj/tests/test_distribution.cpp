#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <cstdint>
#include <random>
#include <vector>

#include "cobex/distribution.hpp"
#include "oracle_helpers.hpp"

using namespace cobex;

TEST_SUITE_BEGIN("distribution");

TEST_CASE("table construction validates and normalizes") {
    SUBCASE("direct placement") {
        // entries indexed by bitmask, bit i = R_{i+1} true
        const auto d = JointDistribution::from_table(2, {0.7, 0.1, 0.1, 0.1});
        CHECK(d.var_count() == 2);
        CHECK(d.prob(0) == 0.7);
        CHECK(d.prob(3) == 0.1);
    }
    SUBCASE("rounded decimals renormalize") {
        const auto d = JointDistribution::from_table(1, {0.3333334, 0.6666667});
        CHECK(d.prob(0) + d.prob(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("rejects a sum off by more than 1e-6") {
        CHECK_THROWS_WITH_AS(JointDistribution::from_table(1, {0.5, 0.4}),
                             doctest::Contains("unnormalized"), std::invalid_argument);
    }
    SUBCASE("rejects negative entries") {
        CHECK_THROWS_WITH_AS(JointDistribution::from_table(1, {1.1, -0.1}),
                             doctest::Contains("negative"), std::invalid_argument);
    }
    SUBCASE("rejects bad variable counts") {
        CHECK_THROWS_AS(JointDistribution::from_table(0, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(JointDistribution::from_table(21, std::vector<double>(1, 1.0)),
                        std::invalid_argument);
        CHECK_THROWS_AS(JointDistribution::from_table(2, {0.5, 0.5}),
                        std::invalid_argument);
    }
}

TEST_CASE("weight vector groups mass by number of false propositions") {
    SUBCASE("Tokyo base case") {
        const auto d = grid_overlap_distribution(100, {{41, 60}, {51, 70}});
        const auto w = weight_vector(d);
        CHECK(w.a(0) == 0.10);
        CHECK(w.a(1) == 0.20);
        CHECK(w.a(2) == 0.70);
    }
    SUBCASE("Tokyo alternate A") {
        const auto w = weight_vector(grid_overlap_distribution(100, {{50, 60}, {51, 61}}));
        CHECK(w.a(0) == 0.10);
        CHECK(w.a(1) == 0.02);
        CHECK(w.a(2) == 0.88);
    }
    SUBCASE("three disjoint singletons put everything at two falses") {
        const double third = 1.0 / 3.0;
        std::vector<double> probs(8, 0.0);
        probs[0b001] = probs[0b010] = probs[0b100] = third;
        const auto w = weight_vector(JointDistribution::from_table(3, probs));
        CHECK(w.a(0) == 0.0);
        CHECK(w.a(1) == 0.0);
        CHECK(w.a(2) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(w.a(3) == 0.0);
    }
    SUBCASE("sums to one") {
        std::mt19937 rng(7101);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 6);
            const auto d = JointDistribution::from_table(n, oracle::random_joint(rng, n));
            const auto w = weight_vector(d);
            double sum = 0.0;
            for (int i = 0; i <= n; ++i) sum += w.a(i);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("invariant under permutation of the variable order") {
        std::mt19937 rng(7102);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 4);
            const auto probs = oracle::random_joint(rng, n);
            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<double> permuted(probs.size());
            for (std::uint32_t mask = 0; mask < probs.size(); ++mask) {
                std::uint32_t to = 0;
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1) to |= 1u << perm[static_cast<std::size_t>(i)];
                permuted[to] = probs[mask];
            }
            const auto w = weight_vector(JointDistribution::from_table(n, probs));
            const auto wp = weight_vector(JointDistribution::from_table(n, permuted));
            for (int i = 0; i <= n; ++i)
                CHECK(w.a(i) == doctest::Approx(wp.a(i)).epsilon(1e-13));
        }
    }
}

TEST_CASE("grid construction") {
    SUBCASE("paper values are exact") {
        const auto base = weight_vector(grid_overlap_distribution(100, {{41, 60}, {51, 70}}));
        CHECK(base.a(0) == 0.10);
        CHECK(base.a(1) == 0.20);
        const auto b = weight_vector(grid_overlap_distribution(100, {{26, 60}, {41, 75}}));
        CHECK(b.a(0) == 0.20);
        CHECK(b.a(1) == 0.30);
    }
    SUBCASE("coextensive intervals are fully coherent") {
        const auto w = weight_vector(grid_overlap_distribution(10, {{1, 10}, {1, 10}}));
        CHECK(w.a(0) == 1.0);
        CHECK(w.a(1) == 0.0);
        CHECK(w.a(2) == 0.0);
    }
    SUBCASE("matches per-cell counting exactly at small cell counts") {
        std::mt19937 rng(7103);
        for (int trial = 0; trial < 300; ++trial) {
            const std::uint64_t cells = 1 + rng() % 30;
            const int n = 1 + static_cast<int>(rng() % 4);
            std::vector<Interval> intervals;
            for (int i = 0; i < n; ++i) {
                const std::uint64_t lo = 1 + rng() % cells;
                const std::uint64_t hi = lo + rng() % (cells - lo + 1);
                intervals.push_back({lo, hi});
            }
            const auto w = weight_vector(grid_overlap_distribution(cells, intervals));
            // rational check: count every cell, bucket by #non-covering intervals
            std::vector<std::uint64_t> falses_count(static_cast<std::size_t>(n) + 1, 0);
            for (std::uint64_t cell = 1; cell <= cells; ++cell) {
                int falses = 0;
                for (const Interval& iv : intervals)
                    if (cell < iv.lo || cell > iv.hi) ++falses;
                falses_count[static_cast<std::size_t>(falses)]++;
            }
            for (int i = 0; i <= n; ++i) {
                const double expected =
                    static_cast<double>(falses_count[static_cast<std::size_t>(i)]) /
                    static_cast<double>(cells);
                CHECK(w.a(i) == expected);
            }
        }
    }
    SUBCASE("rejects bad intervals") {
        CHECK_THROWS_WITH_AS(grid_overlap_distribution(100, {{5, 4}}),
                             doctest::Contains("empty interval"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(grid_overlap_distribution(100, {{0, 10}}),
                             doctest::Contains("out of range"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(grid_overlap_distribution(100, {{90, 101}}),
                             doctest::Contains("out of range"), std::invalid_argument);
        CHECK_THROWS_AS(grid_overlap_distribution(0, {{1, 1}}), std::invalid_argument);
    }
}

TEST_CASE("exact counts survive marginalization") {
    const auto d = grid_overlap_distribution(100, {{41, 60}, {51, 70}});
    const auto marginal = d.drop_last();
    REQUIRE(marginal.has_exact_counts());
    CHECK(marginal.var_count() == 1);
    const auto w = weight_vector(marginal);
    CHECK(w.a(0) == 0.20);
    CHECK(w.a(1) == 0.80);
    CHECK_THROWS_AS(marginal.drop_last(), std::invalid_argument);
}

TEST_CASE("from_counts rejects inconsistent denominators") {
    CHECK_THROWS_AS(JointDistribution::from_counts(1, {3, 3}, 7), std::invalid_argument);
    CHECK_THROWS_AS(JointDistribution::from_counts(1, {0, 0}, 0), std::invalid_argument);
}

TEST_CASE("weight vector validation") {
    CHECK_THROWS_AS(WeightVector({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), std::invalid_argument);
    CHECK(WeightVector({0.1, 0.2, 0.7}).set_size() == 2);
}

TEST_CASE("reliability parameters") {
    const ReliabilityParams r(0.8, 0.4);
    CHECK(r.likelihood_ratio() == 0.5);
    CHECK(r.reliability() == 0.5);
    CHECK_THROWS_WITH_AS(ReliabilityParams(0.4, 0.5), doctest::Contains("p > q"),
                         std::invalid_argument);
    CHECK_THROWS_AS(ReliabilityParams(0.4, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(ReliabilityParams(1.2, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(ReliabilityParams(0.8, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
