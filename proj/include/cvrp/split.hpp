#pragma once

#include <cstdint>
#include <vector>

#include "cvrp/graph.hpp"
#include "cvrp/instance.hpp"
#include "cvrp/rational.hpp"

namespace cvrp {

// Which clients of a tour order get a depot detour for a given tiling
// offset theta. Both vectors are indexed by position in the order.
struct BadMarks {
    std::vector<char> bad;
    std::vector<char> four_copy;  // bad big clients served by their own round trip
};

// Tiles [0, total demand) with a first tile of length theta followed by
// tiles of length 1-delta (in capacity-normalized units). Position i is
// bad iff a tile endpoint theta + l*(1-delta) lands in its demand
// interval (prefix(i-1), prefix(i)]; it additionally gets four copies iff
// an endpoint lands strictly below prefix(i) - delta. Demand prefixes are
// exact integers; endpoint comparisons carry a 1e-12 relative collar.
BadMarks mark_bad(const std::vector<std::int64_t>& demands, std::int64_t capacity, Delta delta,
                  double theta);

struct SplitOutcome {
    double theta = 0.0;
    std::vector<int> bad;        // client ids
    std::vector<int> four_copy;  // subset of bad
    Solution tours;
    double added_cost = 0.0;  // total cost of the detour edges
};

// Randomized tour splitting: cuts the TSP order at bad clients. A
// two-copy bad client finishes its tour; a four-copy one is served by a
// singleton round trip.
SplitOutcome split_at_theta(const TspResult& tsp, const Instance& inst, Delta delta, double theta);

// Same with theta ~ Uniform[0, 1-delta] drawn from the seed.
SplitOutcome randomized_split(const TspResult& tsp, const Instance& inst, Delta delta,
                              std::uint64_t seed);

// The closed-form bound on the expected randomized-split cost:
//   tsp_cost + D_small/(1-d) + 2 D_big/(1-d) - d D'_big/(1-d).
double split_bound(double tsp_cost, const RadialBounds& bounds);

// Optimal partition of the TSP order into consecutive feasible segments,
// O(n^2) shortest-path DP. Never costs more than any split_at_theta
// outcome, since each outcome is one such partition.
Solution dp_split(const TspResult& tsp, const Instance& inst);

}  // namespace cvrp
