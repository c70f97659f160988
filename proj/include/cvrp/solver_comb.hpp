#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvrp/graph.hpp"
#include "cvrp/instance.hpp"

namespace cvrp {

// The combinatorial solver fixes delta = 1/3, so at most two big clients
// fit in any tour and big-only tours are exactly loop-matchings.
inline const Delta kCombDelta{1, 3};

// Big clients with a pair edge c(r,u)+c(u,v)+c(v,r) whenever their
// demands fit together, and a loop 2 c(r,v) at every node.
struct AuxGraph {
    std::vector<int> big;  // node id of graph vertex i
    WeightedGraph graph;
};

AuxGraph build_aux_graph(const Instance& inst);

struct BigMatchResult {
    Matching matching;
    std::vector<Tour> tours;  // loop -> (r,v,r); edge -> (r,u,v,r)
};

BigMatchResult match_big(const AuxGraph& aux, const Instance& inst);

struct CombCertificate {
    double cost_m = 0.0;          // weight of the big-client matching
    double cost_t = 0.0;          // matching tours + split of the small-client tour
    double cost_f = 0.0;          // split of the full tour
    double tsp_small_cost = 0.0;
    double tsp_full_cost = 0.0;
    double returned_cost = 0.0;
    RadialBounds bounds;
    bool ledger_ok = true;
    std::string ledger_failure;
};

// Returns the cheaper of the matching+small-split solution and the
// full-tour split solution. The certificate carries the per-run
// inequality ledger:
//   cost_m <= D'_big
//   cost_t <= cost_m + tsp_small + (3/2) D_small
//   cost_f <= tsp_full + (3/2) D_small + 3 D_big - (1/2) D'_big
std::pair<Solution, CombCertificate> solve_combinatorial(const Instance& inst, TspAlgo tsp_alg);

}  // namespace cvrp
