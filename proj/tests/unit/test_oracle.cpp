#include <doctest.h>

#include "cvrp/graph.hpp"
#include "cvrp/oracle.hpp"
#include "support/util.hpp"

using namespace cvrp;

TEST_CASE("single client optimum is the round trip") {
    const auto inst = testutil::euclidean_instance(5, {{0, 0}, {3, 4}}, {2});
    const auto res = exact_cvrp(inst);
    CHECK(res.opt_cost == doctest::Approx(10.0));
    CHECK(validate_solution(res.opt_tours, inst).ok());
}

TEST_CASE("full-demand clients force singleton tours") {
    const auto inst = testutil::euclidean_instance(4, {{0, 0}, {1, 0}, {0, 2}, {-3, 0}}, {4, 4, 4});
    const auto res = exact_cvrp(inst);
    CHECK(res.opt_cost == doctest::Approx(2.0 + 4.0 + 6.0));
    CHECK(res.opt_tours.tours.size() == 3);
}

TEST_CASE("everything fits in one tour: optimum equals the TSP tour") {
    for (std::uint64_t seed = 7; seed < 17; ++seed) {
        auto inst = testutil::random_instance(seed, 7, 1000);
        for (int v = 1; v <= inst.num_clients(); ++v) inst.demand[v] = 1;
        const auto res = exact_cvrp(inst);
        const auto tsp = held_karp_tsp(testutil::all_nodes(inst), testutil::metric_of(inst));
        CHECK(res.opt_cost == doctest::Approx(tsp.cost).epsilon(1e-9));
    }
}

TEST_CASE("optimum is at least the most distant round trip") {
    for (std::uint64_t seed = 60; seed < 80; ++seed) {
        const auto inst = testutil::random_instance(seed, 1 + static_cast<int>(seed % 9), 31);
        const auto res = exact_cvrp(inst);
        CHECK(validate_solution(res.opt_tours, inst).ok());
        CHECK(res.opt_tours.total_cost == doctest::Approx(res.opt_cost).epsilon(1e-9));
        for (int v = 1; v <= inst.num_clients(); ++v)
            CHECK(res.opt_cost >= 2.0 * inst.c(0, v) - 1e-9);
    }
}

TEST_CASE("empty instance has optimum zero") {
    const auto inst = testutil::euclidean_instance(5, {{0, 0}}, {});
    CHECK(exact_cvrp(inst).opt_cost == 0.0);
    CHECK(cross_check(inst).agree);
}

TEST_CASE("size limits are enforced") {
    const auto big = testutil::random_instance(1, 15, 10);
    CHECK_THROWS_AS(exact_cvrp(big), std::invalid_argument);
    const auto mid = testutil::random_instance(1, 10, 10);
    CHECK_THROWS_AS(cross_check(mid), std::invalid_argument);
}

TEST_CASE("subset DP agrees with partition enumeration") {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const auto inst = testutil::random_instance(
            seed, 1 + static_cast<int>(seed % 8), 25,
            seed % 2 ? DemandDist::uniform : DemandDist::small_heavy);
        const auto report = cross_check(inst);
        CHECK(report.agree);
        CHECK(report.exact_cost == doctest::Approx(report.enumerated_cost).epsilon(1e-9));
    }
}
