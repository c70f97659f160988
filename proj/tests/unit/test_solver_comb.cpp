#include <doctest.h>

#include "cvrp/oracle.hpp"
#include "cvrp/solver_comb.hpp"
#include "support/brute.hpp"
#include "support/util.hpp"

using namespace cvrp;

TEST_CASE("aux graph shape") {
    SUBCASE("no big clients") {
        const auto inst = testutil::euclidean_instance(10, {{0, 0}, {1, 0}, {0, 1}}, {1, 2});
        const auto aux = build_aux_graph(inst);
        CHECK(aux.big.empty());
        CHECK(aux.graph.n == 0);
    }
    SUBCASE("incompatible pair gets loops only") {
        const auto inst = testutil::euclidean_instance(10, {{0, 0}, {1, 0}, {0, 1}}, {6, 6});
        const auto aux = build_aux_graph(inst);
        CHECK(aux.graph.n == 2);
        CHECK(aux.graph.edges.empty());
        CHECK(aux.graph.loop[0].has_value());
        CHECK(aux.graph.loop[1].has_value());
    }
    SUBCASE("compatible pair gets the tour edge") {
        const auto inst = testutil::euclidean_instance(10, {{0, 0}, {3, 0}, {0, 4}}, {4, 5});
        const auto aux = build_aux_graph(inst);
        REQUIRE(aux.graph.edges.size() == 1);
        CHECK(aux.graph.edges[0].w == doctest::Approx(3.0 + 5.0 + 4.0));
    }
}

TEST_CASE("match_big: single big client becomes a round trip") {
    const auto inst = testutil::euclidean_instance(10, {{0, 0}, {3, 4}}, {9});
    const auto res = match_big(build_aux_graph(inst), inst);
    REQUIRE(res.tours.size() == 1);
    CHECK(res.tours[0].cost == doctest::Approx(10.0));
    CHECK(res.matching.weight == doctest::Approx(10.0));
}

TEST_CASE("match_big: pairing wins when the connecting leg is short") {
    // c(r,u)=c(r,v)=5, c(u,v)=1 via a thin triangle.
    const auto inst =
        testutil::euclidean_instance(10, {{0, 0}, {5, 0}, {5 * std::cos(0.2), 5 * std::sin(0.2)}},
                                     {4, 5});
    const auto aux = build_aux_graph(inst);
    const auto res = match_big(aux, inst);
    REQUIRE(res.matching.pairs.size() == 1);
    CHECK(res.matching.weight < 20.0);
    CHECK(res.matching.weight == doctest::Approx(10.0 + inst.c(1, 2)));
}

TEST_CASE("matching weight equals exhaustive loop-matching optimum") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        const auto inst = testutil::random_instance(seed, 2 + static_cast<int>(seed % 7), 12);
        const auto aux = build_aux_graph(inst);
        if (aux.big.empty()) continue;
        const auto res = match_big(aux, inst);
        const auto expected = brute::min_perfect_matching(aux.graph);
        REQUIRE(expected.has_value());
        CHECK(res.matching.weight == doctest::Approx(*expected).epsilon(1e-9));
        double tours_cost = 0.0;
        for (const auto& t : res.tours) tours_cost += t.cost;
        CHECK(tours_cost == doctest::Approx(res.matching.weight).epsilon(1e-9));
    }
}

TEST_CASE("solver handles all-big incompatible instances with per-client round trips") {
    const auto inst =
        testutil::euclidean_instance(10, {{0, 0}, {2, 0}, {0, 3}, {-4, 0}}, {9, 8, 7});
    const auto [sol, cert] = solve_combinatorial(inst, TspAlgo::held_karp);
    const auto rb = radial_bounds(inst, kCombDelta);
    CHECK(sol.total_cost == doctest::Approx(rb.d_prime_big));
    CHECK(cert.ledger_ok);
    CHECK(validate_solution(sol, inst).ok());
}

TEST_CASE("single small client becomes one round trip") {
    const auto inst = testutil::euclidean_instance(10, {{0, 0}, {3, 4}}, {2});
    const auto [sol, cert] = solve_combinatorial(inst, TspAlgo::held_karp);
    REQUIRE(sol.tours.size() == 1);
    CHECK(sol.total_cost == doctest::Approx(10.0));
    CHECK(cert.cost_m == 0.0);
}

TEST_CASE("empty instance solves to the empty solution") {
    const auto inst = testutil::euclidean_instance(5, {{0, 0}}, {});
    const auto [sol, cert] = solve_combinatorial(inst, TspAlgo::held_karp);
    CHECK(sol.tours.empty());
    CHECK(cert.returned_cost == 0.0);
    CHECK(cert.ledger_ok);
}

TEST_CASE("certificate ledger and the 2.75 ratio hold on random instances") {
    int checked = 0;
    for (std::uint64_t seed = 900; seed < 960; ++seed) {
        const auto inst = testutil::random_instance(
            seed, 1 + static_cast<int>(seed % 10), 15,
            seed % 2 ? DemandDist::uniform : DemandDist::small_heavy);
        const auto [sol, cert] = solve_combinatorial(inst, TspAlgo::held_karp);
        CHECK(validate_solution(sol, inst).ok());
        CHECK(cert.ledger_ok);
        CHECK(cert.returned_cost == doctest::Approx(std::min(cert.cost_t, cert.cost_f)));

        const auto opt = exact_cvrp(inst);
        CHECK(cert.cost_m <= opt.opt_cost + 1e-9 * std::max(1.0, opt.opt_cost));
        CHECK(sol.total_cost <= 2.75 * opt.opt_cost + 1e-9);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("solver works with every tsp backend") {
    const auto inst = testutil::random_instance(31, 9, 20);
    for (auto algo : {TspAlgo::christofides, TspAlgo::double_tree, TspAlgo::held_karp}) {
        const auto [sol, cert] = solve_combinatorial(inst, algo);
        CHECK(validate_solution(sol, inst).ok());
        CHECK(cert.ledger_ok);
    }
}
