#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "test_support.hpp"
#include "tempograph/densest.hpp"

using namespace tempo;

namespace {

StaticGraph k4_plus_triangle() {
    // disjoint K4 {3,4,5,6} and triangle {0,1,2}
    return StaticGraph::from_edges({{0, 1}, {1, 2}, {0, 2},
                                    {3, 4}, {3, 5}, {3, 6},
                                    {4, 5}, {4, 6}, {5, 6}});
}

double indicator(uint64_t x) { return x > 0 ? 1.0 : 0.0; }

} // namespace

TEST_CASE("StaticGraph validates and measures") {
    CHECK_THROWS_AS(StaticGraph({0, 1}, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(StaticGraph::from_edges({{1, 1}}), std::invalid_argument);

    StaticGraph g = k4_plus_triangle();
    CHECK(g.density() == doctest::Approx(9.0 / 7.0));
    CHECK(subgraph_density(g, std::vector<uint32_t>{0, 1, 2}) == doctest::Approx(1.0));
    CHECK(subgraph_density(g, std::vector<uint32_t>{3, 4, 5, 6}) == doctest::Approx(1.5));
    CHECK(subgraph_edge_count(g, std::vector<uint32_t>{0, 1, 3}) == 1);
    CHECK(subgraph_density(g, {}) == 0.0);
}

TEST_CASE("brute_force_densest finds hand-checked optima") {
    // triangle with a pendant: the triangle alone is densest
    StaticGraph pendant = StaticGraph::from_edges({{0, 1}, {1, 2}, {0, 2}, {2, 3}});
    DensestResult r = brute_force_densest(pendant);
    CHECK(r.density == doctest::Approx(1.0));
    CHECK(r.nodes == std::vector<uint32_t>{0, 1, 2});
    CHECK(r.exact);

    DensestResult k4 = brute_force_densest(k4_plus_triangle());
    CHECK(k4.density == doctest::Approx(1.5));
    CHECK(k4.nodes == std::vector<uint32_t>{3, 4, 5, 6});

    // two disjoint edges tie at 1/2; the lexicographically smaller set wins
    StaticGraph pair2 = StaticGraph::from_edges({{2, 3}, {0, 1}});
    CHECK(brute_force_densest(pair2).nodes == std::vector<uint32_t>{0, 1});

    CHECK(brute_force_densest(StaticGraph{}).nodes.empty());
    std::vector<uint32_t> many(21);
    std::iota(many.begin(), many.end(), 0u);
    CHECK_THROWS_AS(brute_force_densest(StaticGraph(many, {{0, 1}})),
                    std::invalid_argument);
}

TEST_CASE("exact_densest matches brute force on random graphs") {
    Rng rng(314);
    for (int trial = 0; trial < 60; ++trial) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(9));
        size_t m = 1 + rng.below(n * (n - 1) / 2);
        StaticGraph g = testsup::random_static(rng, n, m);
        DensestResult want = brute_force_densest(g);
        DensestResult got = exact_densest(g);
        INFO("trial ", trial, " n=", n, " m=", g.edge_count());
        CHECK(got.density == doctest::Approx(want.density).epsilon(1e-12));
        CHECK(subgraph_density(g, got.nodes) == doctest::Approx(want.density).epsilon(1e-12));
    }
}

TEST_CASE("exact_densest on edgeless graphs") {
    StaticGraph isolated({0, 1, 2}, {});
    DensestResult r = exact_densest(isolated);
    CHECK(r.density == 0.0);
    CHECK(r.nodes.size() == 1);
    CHECK(exact_densest(StaticGraph{}).nodes.empty());
}

TEST_CASE("charikar_peel is within half of optimal") {
    Rng rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        uint32_t n = 3 + static_cast<uint32_t>(rng.below(8));
        size_t m = 2 + rng.below(n * (n - 1) / 2);
        StaticGraph g = testsup::random_static(rng, n, m);
        double opt = brute_force_densest(g).density;
        DensestResult peel = charikar_peel(g);
        CHECK(peel.density >= 0.5 * opt - 1e-12);
        CHECK(subgraph_density(g, peel.nodes) == doctest::Approx(peel.density));
    }
}

TEST_CASE("generalized density accounting") {
    StaticGraph g = k4_plus_triangle();
    NodeWeights w;
    w.lambda = 2.0;
    w.delta = {1, 1, 1, 0, 0, 0, 0}; // only the triangle is uncovered

    // the uncovered triangle now outweighs the denser K4
    CHECK(gen_density_of(g, std::vector<uint32_t>{0, 1, 2}, w) == doctest::Approx(7.0));
    CHECK(gen_density_of(g, std::vector<uint32_t>{3, 4, 5, 6}, w) == doctest::Approx(1.5));

    // and the overall winner keeps the K4 for free alongside the triangle
    GeneralizedResult best = static_greedy_generalized(g, w);
    CHECK(best.nodes == std::vector<uint32_t>{0, 1, 2, 3, 4, 5, 6});
    CHECK(best.gen_density == doctest::Approx(9.0 / 7.0 + 6.0));
    CHECK(best.density == doctest::Approx(9.0 / 7.0));

    NodeWeights bad;
    bad.delta = {-0.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("trivial weights reduce the generalized solvers to the plain ones") {
    Rng rng(99);
    NodeWeights none; // lambda = 0
    for (int trial = 0; trial < 25; ++trial) {
        uint32_t n = 2 + static_cast<uint32_t>(rng.below(8));
        size_t m = 1 + rng.below(n * (n - 1) / 2);
        StaticGraph g = testsup::random_static(rng, n, m);

        GeneralizedResult gen = brute_force_densest_generalized(g, none);
        DensestResult plain = brute_force_densest(g);
        CHECK(gen.nodes == plain.nodes);
        CHECK(gen.gen_density == doctest::Approx(plain.density));

        GeneralizedResult peel = static_greedy_generalized(g, none);
        DensestResult classic = charikar_peel(g);
        CHECK(peel.nodes == classic.nodes);
    }
}

TEST_CASE("generalized peel stays within half of the generalized optimum") {
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        uint32_t n = 3 + static_cast<uint32_t>(rng.below(7));
        size_t m = 2 + rng.below(n * (n - 1) / 2);
        StaticGraph g = testsup::random_static(rng, n, m);
        NodeWeights w = testsup::random_weights(rng, n, 2.0);
        double opt = brute_force_densest_generalized(g, w).gen_density;
        GeneralizedResult got = static_greedy_generalized(g, w);
        CHECK(got.gen_density >= 0.5 * opt - 1e-12);
        CHECK(got.gen_density == doctest::Approx(gen_density_of(g, got.nodes, w)));
    }
}

TEST_CASE("greedy_k_static repeats itself without coverage pressure") {
    StaticGraph g = k4_plus_triangle();
    auto rounds = greedy_k_static(g, 3, 0.0, indicator);
    REQUIRE(rounds.size() == 3);
    for (const auto& r : rounds) {
        CHECK(r.nodes == rounds.front().nodes);
        CHECK(r.density == doctest::Approx(rounds.front().density));
    }

    CHECK_THROWS_AS(greedy_k_static(g, 0, 0.0, indicator), std::invalid_argument);
    CHECK_THROWS_AS(greedy_k_static(g, 1, -1.0, indicator), std::invalid_argument);
}

TEST_CASE("coverage pressure moves later rounds off the densest set") {
    StaticGraph g = k4_plus_triangle();
    auto rounds = greedy_k_static(g, 2, 5.0, indicator);
    REQUIRE(rounds.size() == 2);
    // once coverage is spent, round 2 falls back to the plain densest set
    CHECK(rounds[0].nodes != rounds[1].nodes);
    CHECK(rounds[1].nodes == std::vector<uint32_t>{3, 4, 5, 6});
    std::vector<uint32_t> seen;
    for (const auto& r : rounds)
        seen.insert(seen.end(), r.nodes.begin(), r.nodes.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    CHECK(seen == std::vector<uint32_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("exact inner selection never trails the peeled one") {
    Rng rng(515);
    for (int trial = 0; trial < 15; ++trial) {
        uint32_t n = 3 + static_cast<uint32_t>(rng.below(5));
        size_t m = 2 + rng.below(n * (n - 1) / 2);
        StaticGraph g = testsup::random_static(rng, n, m);
        auto exact = greedy_k_static(g, 2, 1.0, indicator, true);
        auto peeled = greedy_k_static(g, 2, 1.0, indicator, false);
        double sum_exact = 0, sum_peeled = 0;
        for (const auto& r : exact) sum_exact += r.gen_density;
        for (const auto& r : peeled) sum_peeled += r.gen_density;
        // per-round exact argmax dominates greedily, round by round
        CHECK(exact[0].gen_density >= peeled[0].gen_density - 1e-12);
        CHECK(sum_exact >= 0.0);
        CHECK(sum_peeled >= 0.0);
    }
}
