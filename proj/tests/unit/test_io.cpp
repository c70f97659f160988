#include <doctest.h>

#include <cmath>

#include "cvrp/io.hpp"
#include "support/util.hpp"

using namespace cvrp;

namespace {

const char* kTwoClientFile = R"(NAME : tiny
TYPE : CVRP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EUC_2D
CAPACITY : 10
NODE_COORD_SECTION
1 0 0
2 3 4
3 0 5
DEMAND_SECTION
1 0
2 4
3 7
DEPOT_SECTION
1
-1
EOF
)";

}  // namespace

TEST_CASE("euclidean parse: exact and rounded modes") {
    const auto exact = parse_instance(kTwoClientFile);
    CHECK(exact.num_clients() == 2);
    CHECK(exact.capacity == 10);
    CHECK(exact.c(0, 1) == doctest::Approx(5.0));
    CHECK(exact.c(0, 2) == doctest::Approx(5.0));
    CHECK(exact.c(1, 2) == doctest::Approx(std::sqrt(10.0)));
    CHECK_FALSE(exact.rounded_costs);

    const auto rounded = parse_instance(kTwoClientFile, true);
    CHECK(rounded.c(1, 2) == doctest::Approx(3.0));
    CHECK(rounded.rounded_costs);
}

TEST_CASE("parser rejects malformed files") {
    CHECK_THROWS_WITH_AS(parse_instance("FOO : 1\n"), doctest::Contains("unknown keyword"),
                         std::runtime_error);

    std::string missing_demand = kTwoClientFile;
    missing_demand.replace(missing_demand.find("3 7\n"), 4, "");
    CHECK_THROWS_WITH_AS(parse_instance(missing_demand), doctest::Contains("DEMAND_SECTION"),
                         std::runtime_error);

    std::string no_depot = kTwoClientFile;
    no_depot.replace(no_depot.find("DEPOT_SECTION\n1\n"), 16, "DEPOT_SECTION\n");
    CHECK_THROWS_WITH_AS(parse_instance(no_depot), doctest::Contains("depot"), std::runtime_error);

    std::string depot_demand = kTwoClientFile;
    depot_demand.replace(depot_demand.find("1 0\n2 4"), 7, "1 2\n2 4");
    CHECK_THROWS_WITH_AS(parse_instance(depot_demand), doctest::Contains("depot demand"),
                         std::runtime_error);
}

TEST_CASE("depot is remapped to node 0") {
    std::string shifted = kTwoClientFile;
    shifted.replace(shifted.find("DEPOT_SECTION\n1\n"), 16, "DEPOT_SECTION\n2\n");
    std::string fixed = shifted;
    fixed.replace(fixed.find("1 0\n2 4\n3 7"), 11, "1 4\n2 0\n3 7");
    const auto inst = parse_instance(fixed);
    CHECK(inst.demand[0] == 0);
    CHECK(inst.demand[1] == 4);   // file node 1
    CHECK(inst.demand[2] == 7);   // file node 3
    CHECK(inst.c(0, 1) == doctest::Approx(5.0));  // (3,4) -> (0,0)
}

TEST_CASE("explicit matrices parse: full and lower row") {
    const char* full = R"(NAME : m
TYPE : CVRP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EXPLICIT
EDGE_WEIGHT_FORMAT : FULL_MATRIX
CAPACITY : 5
EDGE_WEIGHT_SECTION
0 2 3
2 0 4
3 4 0
DEMAND_SECTION
1 0
2 2
3 3
DEPOT_SECTION
1
-1
EOF
)";
    const auto a = parse_instance(full);
    CHECK(a.c(1, 2) == doctest::Approx(4.0));

    const char* lower = R"(NAME : m
TYPE : CVRP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EXPLICIT
EDGE_WEIGHT_FORMAT : LOWER_ROW
CAPACITY : 5
EDGE_WEIGHT_SECTION
2
3 4
DEMAND_SECTION
1 0
2 2
3 3
DEPOT_SECTION
1
-1
EOF
)";
    const auto b = parse_instance(lower);
    CHECK(b.c(0, 1) == doctest::Approx(2.0));
    CHECK(b.c(0, 2) == doctest::Approx(3.0));
    CHECK(b.c(1, 2) == doctest::Approx(4.0));
}

TEST_CASE("format/parse round-trips generated instances") {
    for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
        const auto inst = testutil::random_instance(seed, 12, 50);
        const auto text = format_instance(inst);
        const auto back = parse_instance(text);
        CHECK(back.num_clients() == inst.num_clients());
        CHECK(back.capacity == inst.capacity);
        for (int u = 0; u < inst.num_nodes(); ++u) {
            CHECK(back.demand[u] == inst.demand[u]);
            for (int v = 0; v < inst.num_nodes(); ++v)
                CHECK(back.c(u, v) == doctest::Approx(inst.c(u, v)).epsilon(1e-12));
        }
        CHECK(format_instance(back) == text);
    }
}

TEST_CASE("generator is deterministic and respects ranges") {
    GeneratorConfig cfg;
    cfg.n = 50;
    cfg.capacity = 100;
    cfg.seed = 123;
    const auto a = generate_instance(cfg);
    const auto b = generate_instance(cfg);
    CHECK(format_instance(a) == format_instance(b));
    for (int v = 1; v <= a.num_clients(); ++v) {
        CHECK(a.demand[v] >= 1);
        CHECK(a.demand[v] <= 100);
    }
    CHECK(validate_instance(a).ok());

    cfg.dist = DemandDist::small_heavy;
    const auto c = generate_instance(cfg);
    for (int v = 1; v <= c.num_clients(); ++v) CHECK(c.demand[v] <= 33);

    cfg.n = 0;
    const auto empty = generate_instance(cfg);
    CHECK(empty.num_clients() == 0);
}

TEST_CASE("solution json round-trip") {
    const auto inst = testutil::euclidean_instance(10, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {2, 3, 4});
    Solution sol;
    sol.add(Tour::of(inst, {2, 1}));
    sol.add(Tour::of(inst, {3}));
    SolutionMeta meta;
    meta.instance = "test";
    meta.algorithm = "comb";
    meta.seed = 42;
    meta.d_bound = 1.25;
    meta.oracle_opt = 9.5;

    const auto text = write_solution(sol, meta);
    const auto back = read_solution(text, inst);
    CHECK(back.solution.tours.size() == 2);
    CHECK(back.solution.tours[0].clients == std::vector<int>{2, 1});
    CHECK(back.solution.total_cost == doctest::Approx(sol.total_cost));
    CHECK(back.meta.seed == 42);
    CHECK(back.meta.oracle_opt.has_value());
    CHECK(write_solution(back.solution, back.meta) == text);
}

TEST_CASE("empty solution serializes to empty tours") {
    const auto inst = testutil::euclidean_instance(5, {{0, 0}}, {});
    Solution sol;
    const auto text = write_solution(sol, {});
    CHECK(text.find("\"tours\": []") != std::string::npos);
    CHECK(text.find("\"total_cost\": 0.0") != std::string::npos);
    const auto back = read_solution(text, inst);
    CHECK(back.solution.tours.empty());
}

TEST_CASE("reading rejects duplicate and unknown clients") {
    const auto inst = testutil::euclidean_instance(10, {{0, 0}, {1, 0}, {0, 1}}, {2, 3});
    CHECK_THROWS_WITH_AS(read_solution(R"({"tours": [[2],[2]]})", inst),
                         doctest::Contains("duplicate"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_solution(R"({"tours": [[7]]})", inst), doctest::Contains("unknown"),
                         std::runtime_error);
    CHECK_THROWS_AS(read_solution("not json", inst), std::runtime_error);
}
