#pragma once

#include <cstdint>

#include "cvrp/instance.hpp"

namespace cvrp {

struct OracleResult {
    double opt_cost = 0.0;
    Solution opt_tours;
    std::uint64_t subsets_enumerated = 0;
    double seconds = 0.0;
};

// Exact optimum by subset-split DP over client bitmasks with Held-Karp
// tour costs per block. Limited to n <= 14.
OracleResult exact_cvrp(const Instance& inst);

struct CrossCheckReport {
    double exact_cost = 0.0;
    double enumerated_cost = 0.0;
    bool agree = false;
};

// Recomputes the optimum by explicit enumeration of all partitions into
// feasible blocks, each block costed by brute-force permutations, and
// compares with exact_cvrp. Limited to n <= 9.
CrossCheckReport cross_check(const Instance& inst);

}  // namespace cvrp
