#include <doctest.h>

#include <cmath>

#include "cvrp/graph.hpp"
#include "cvrp/rng.hpp"
#include "support/brute.hpp"
#include "support/util.hpp"

using namespace cvrp;

namespace {

DistFn table_metric(const std::vector<std::vector<double>>& d) {
    return [d](int u, int v) { return d[u][v]; };
}

std::vector<std::vector<double>> random_metric(cvrp::Rng& rng, int k) {
    // Random points on a line segment plus jitter keeps it metric.
    std::vector<std::array<double, 2>> pts(k);
    for (auto& p : pts) p = {100.0 * rng.next_unit(), 100.0 * rng.next_unit()};
    std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            d[i][j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    return d;
}

std::vector<int> iota_nodes(int k) {
    std::vector<int> nodes(k);
    for (int i = 0; i < k; ++i) nodes[i] = i;
    return nodes;
}

const std::vector<std::vector<double>> kUnitSquare = {
    {0, 1, std::sqrt(2.0), 1},
    {1, 0, 1, std::sqrt(2.0)},
    {std::sqrt(2.0), 1, 0, 1},
    {1, std::sqrt(2.0), 1, 0},
};

}  // namespace

TEST_CASE("mst of two nodes is the single edge") {
    const auto tree = mst({0, 1}, table_metric({{0, 7}, {7, 0}}));
    REQUIRE(tree.size() == 1);
    CHECK(tree[0].w == doctest::Approx(7.0));
}

TEST_CASE("mst of the unit square weighs 3") {
    const auto tree = mst(iota_nodes(4), table_metric(kUnitSquare));
    double total = 0.0;
    for (const auto& e : tree) total += e.w;
    CHECK(total == doctest::Approx(3.0));
}

TEST_CASE("mst equals exhaustive spanning-tree minimum on random metrics") {
    cvrp::Rng rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_int(0, 5));  // up to 7
        const auto d = random_metric(rng, k);
        const auto nodes = iota_nodes(k);
        const auto tree = mst(nodes, table_metric(d));
        double total = 0.0;
        for (const auto& e : tree) total += e.w;
        CHECK(total ==
              doctest::Approx(brute::min_spanning_tree_weight(nodes, table_metric(d))).epsilon(1e-9));
    }
}

TEST_CASE("held-karp basics") {
    CHECK(held_karp_tsp({0, 1}, table_metric({{0, 3}, {3, 0}})).cost == doctest::Approx(6.0));
    CHECK(held_karp_tsp(iota_nodes(4), table_metric(kUnitSquare)).cost == doctest::Approx(4.0));
    std::vector<int> too_many(21);
    CHECK_THROWS_AS(held_karp_tsp(too_many, table_metric(kUnitSquare)), std::invalid_argument);
}

TEST_CASE("held-karp equals permutation enumeration") {
    cvrp::Rng rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_int(0, 7));  // up to 9
        const auto d = random_metric(rng, k);
        const auto nodes = iota_nodes(k);
        const auto hk = held_karp_tsp(nodes, table_metric(d));
        CHECK(hk.cost == doctest::Approx(brute::permutation_tsp(nodes, table_metric(d))).epsilon(1e-9));
        // The reported order must realize the reported cost.
        double c = 0.0;
        for (std::size_t i = 0; i < hk.order.size(); ++i)
            c += d[hk.order[i]][hk.order[(i + 1) % hk.order.size()]];
        CHECK(c == doctest::Approx(hk.cost).epsilon(1e-12));
    }
}

TEST_CASE("eulerian shortcut on a simple cycle returns the cycle") {
    const auto tour = eulerian_shortcut({{0, 1}, {1, 2}, {2, 0}}, 0);
    CHECK(tour == std::vector<int>{0, 1, 2});
}

TEST_CASE("eulerian shortcut rejects odd degrees and disconnection") {
    CHECK_THROWS_AS(eulerian_shortcut({{0, 1}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(eulerian_shortcut({{0, 1}, {1, 0}, {2, 3}, {3, 2}}, 0), std::invalid_argument);
}

TEST_CASE("doubled tree shortcut visits every node once within twice the tree weight") {
    cvrp::Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 3 + static_cast<int>(rng.next_int(0, 6));
        const auto d = random_metric(rng, k);
        const auto nodes = iota_nodes(k);
        const auto tree = mst(nodes, table_metric(d));
        std::vector<std::pair<int, int>> multi;
        double tree_w = 0.0;
        for (const auto& e : tree) {
            multi.push_back({e.u, e.v});
            multi.push_back({e.u, e.v});
            tree_w += e.w;
        }
        const auto tour = eulerian_shortcut(multi, nodes[0]);
        CHECK(tour.size() == nodes.size());
        double c = 0.0;
        for (std::size_t i = 0; i < tour.size(); ++i)
            c += d[tour[i]][tour[(i + 1) % tour.size()]];
        CHECK(c <= 2.0 * tree_w + 1e-9);
    }
}

TEST_CASE("christofides degenerate sizes") {
    const auto single = christofides({5}, table_metric(kUnitSquare));
    CHECK(single.cost == 0.0);
    CHECK(single.order == std::vector<int>{5});
    const auto pair = christofides({0, 2}, table_metric(kUnitSquare));
    CHECK(pair.cost == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("christofides on three nodes returns the triangle") {
    cvrp::Rng rng(1);
    const auto d = random_metric(rng, 3);
    const auto res = christofides(iota_nodes(3), table_metric(d));
    CHECK(res.cost == doctest::Approx(d[0][1] + d[1][2] + d[2][0]));
}

TEST_CASE("christofides finds the unit square exactly") {
    const auto res = christofides(iota_nodes(4), table_metric(kUnitSquare));
    CHECK(res.cost == doctest::Approx(4.0));
    CHECK(res.guarantee == 1.5);
}

TEST_CASE("christofides and double-tree respect their guarantees on random metrics") {
    cvrp::Rng rng(606);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_int(0, 8));  // up to 10
        const auto d = random_metric(rng, k);
        const auto nodes = iota_nodes(k);
        const auto metric = table_metric(d);
        const auto exact = held_karp_tsp(nodes, metric);
        const auto chr = christofides(nodes, metric);
        CHECK(chr.cost <= 1.5 * exact.cost + 1e-9);
        const auto dt = double_tree(nodes, metric);
        CHECK(dt.cost <= 2.0 * exact.cost + 1e-9);
        CHECK(exact.cost <= chr.cost + 1e-9);
        CHECK(exact.cost <= dt.cost + 1e-9);
        // Both visit every node exactly once.
        CHECK(chr.order.size() == nodes.size());
        CHECK(dt.order.size() == nodes.size());
    }
}

TEST_CASE("tsp algorithm names round-trip") {
    for (auto algo : {TspAlgo::christofides, TspAlgo::double_tree, TspAlgo::held_karp})
        CHECK(tsp_algo_from_name(tsp_algo_name(algo)) == algo);
    CHECK_THROWS_AS(tsp_algo_from_name("lkh"), std::invalid_argument);
}
