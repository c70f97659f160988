#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cvrp/instance.hpp"

namespace cvrp {

// CVRPLIB-style instance text. Supported: EDGE_WEIGHT_TYPE EUC_2D (exact
// Euclidean by default, nearest-integer with rounded=true) and EXPLICIT
// with EDGE_WEIGHT_FORMAT FULL_MATRIX or LOWER_ROW. The depot is remapped
// to node 0.
Instance parse_instance(const std::string& text, bool rounded = false);

Instance load_instance(const std::string& path, bool rounded = false);

// Writes NODE_COORD_SECTION when coordinates are known, otherwise an
// EXPLICIT FULL_MATRIX.
std::string format_instance(const Instance& inst);

struct SolutionMeta {
    std::string instance;
    std::string algorithm;
    std::uint64_t seed = 0;
    double d_bound = 0.0;
    std::optional<double> lp_opt;
    std::optional<double> oracle_opt;
};

std::string write_solution(const Solution& sol, const SolutionMeta& meta);

struct ReadSolution {
    Solution solution;
    SolutionMeta meta;
};

// Parses and sanity-checks a solution file: client ids must exist, no
// client may appear twice, and the stored total must match the
// recomputed cost.
ReadSolution read_solution(const std::string& text, const Instance& inst);

enum class DemandDist { uniform, small_heavy };

struct GeneratorConfig {
    int n = 10;
    std::int64_t capacity = 100;
    DemandDist dist = DemandDist::uniform;
    std::int64_t box = 1000;  // coordinates drawn uniformly from {0..box}^2
    std::uint64_t seed = 1;
};

// Random Euclidean instance: integer grid points, exact double costs,
// demands from the configured distribution. Deterministic in the seed.
Instance generate_instance(const GeneratorConfig& cfg);

}  // namespace cvrp
