#include <doctest.h>

#include <cmath>

#include "cvrp/graph.hpp"
#include "cvrp/rng.hpp"
#include "support/brute.hpp"

using cvrp::Matching;
using cvrp::min_weight_perfect_matching;
using cvrp::WeightedGraph;

TEST_CASE("two nodes: edge beats the loop pair") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 3.0);
    g.set_loop(0, 2.0);
    g.set_loop(1, 2.0);
    const auto m = min_weight_perfect_matching(g);
    CHECK(m.weight == doctest::Approx(3.0));
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.loops.empty());
}

TEST_CASE("two nodes: loops win when the edge is pricier") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 5.0);
    g.set_loop(0, 2.0);
    g.set_loop(1, 2.0);
    const auto m = min_weight_perfect_matching(g);
    CHECK(m.weight == doctest::Approx(4.0));
    CHECK(m.loops.size() == 2);
}

TEST_CASE("K4 with weights 1..6 matches the exhaustive optimum") {
    WeightedGraph g(4);
    int w = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(i, j, w++);
    const auto m = min_weight_perfect_matching(g);
    const auto expected = brute::min_perfect_matching(g);
    REQUIRE(expected.has_value());
    CHECK(m.weight == doctest::Approx(*expected));
}

TEST_CASE("odd node count without loops is infeasible") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    g.add_edge(0, 2, 1.0);
    CHECK_THROWS_AS(min_weight_perfect_matching(g), std::runtime_error);
}

TEST_CASE("disconnected pair without edges is infeasible") {
    WeightedGraph g(2);
    CHECK_THROWS_AS(min_weight_perfect_matching(g), std::runtime_error);
}

TEST_CASE("empty graph matches trivially") {
    WeightedGraph g(0);
    const auto m = min_weight_perfect_matching(g);
    CHECK(m.weight == 0.0);
}

namespace {

WeightedGraph random_graph(cvrp::Rng& rng, int n, bool integer_weights, bool with_loops) {
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.next_unit() < 0.3) continue;  // leave some edges out
            const double w = integer_weights ? static_cast<double>(rng.next_int(0, 100))
                                             : 100.0 * rng.next_unit();
            g.add_edge(i, j, w);
        }
    if (with_loops)
        for (int v = 0; v < n; ++v)
            if (rng.next_unit() < 0.6)
                g.set_loop(v, integer_weights ? static_cast<double>(rng.next_int(0, 100))
                                              : 100.0 * rng.next_unit());
    return g;
}

void check_against_brute(const WeightedGraph& g) {
    const auto expected = brute::min_perfect_matching(g);
    if (!expected) {
        CHECK_THROWS_AS(min_weight_perfect_matching(g), std::runtime_error);
        return;
    }
    const auto m = min_weight_perfect_matching(g);
    CHECK(m.weight == doctest::Approx(*expected).epsilon(1e-9));
    // The reported decomposition must add up to the reported weight.
    double recomputed = 0.0;
    std::vector<char> covered(g.n, 0);
    for (int v : m.loops) {
        REQUIRE(g.loop[v].has_value());
        recomputed += *g.loop[v];
        covered[v] = 1;
    }
    for (const auto& [u, v] : m.pairs) {
        covered[u] = covered[v] = 1;
        for (const auto& e : g.edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) recomputed += e.w;
    }
    CHECK(recomputed == doctest::Approx(m.weight).epsilon(1e-12));
    for (int v = 0; v < g.n; ++v) CHECK(covered[v] == 1);
}

}  // namespace

TEST_CASE("matching equals brute force on random graphs up to 10 nodes") {
    cvrp::Rng rng(20240817);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 * static_cast<int>(rng.next_int(1, 5));  // 2..10
        check_against_brute(random_graph(rng, n, trial % 2 == 0, false));
    }
}

TEST_CASE("loop-enabled matching equals brute force on random graphs") {
    cvrp::Rng rng(77001);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = static_cast<int>(rng.next_int(1, 9));  // odd sizes too
        check_against_brute(random_graph(rng, n, trial % 2 == 0, true));
    }
}

TEST_CASE("matching survives heavy ties") {
    cvrp::Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng.next_int(2, 12));
        WeightedGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_unit() < 0.85) g.add_edge(i, j, static_cast<double>(rng.next_int(0, 3)));
        if (trial % 3 == 0)
            for (int v = 0; v < n; ++v) g.set_loop(v, static_cast<double>(rng.next_int(0, 3)));
        check_against_brute(g);
    }
}

TEST_CASE("matching is deterministic") {
    cvrp::Rng rng(5150);
    const auto g = random_graph(rng, 10, false, true);
    const auto a = min_weight_perfect_matching(g);
    const auto b = min_weight_perfect_matching(g);
    CHECK(a.weight == b.weight);
    CHECK(a.pairs == b.pairs);
    CHECK(a.loops == b.loops);
}
