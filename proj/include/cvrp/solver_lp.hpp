#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cvrp/graph.hpp"
#include "cvrp/instance.hpp"
#include "cvrp/rational.hpp"

namespace cvrp {

// Rounding inflation factor; makes the survival probability of a big
// client exactly 1/2.
inline const double kGamma = 0.6931471805599453;  // ln 2

// One variable per feasible big-client SET; tour_order and cost are the
// exact optimum over that set plus the depot.
struct ConfigColumn {
    std::vector<int> clients;
    std::vector<int> tour_order;  // clients in optimal visiting order
    double cost = 0.0;
};

// All subsets of big clients with at most floor(1/delta) members and
// total demand at most Q, costed by Held-Karp. Requires 1/6 <= delta <= 1/2.
// Throws std::runtime_error when the column budget would be exceeded.
std::vector<ConfigColumn> enumerate_columns(const Instance& inst, Delta delta,
                                            std::size_t max_columns = 5'000'000);

struct LpSolution {
    std::vector<int> big;        // big client ids (row order)
    std::vector<double> x;       // one value per column
    double objective = 0.0;
    std::vector<double> duals;   // one per big client
    int iterations = 0;
};

// Solves the fractional covering LP over the columns and certifies the
// result: coverage >= 1 - 1e-7 per big client, dual feasibility, and a
// weak-duality gap of at most 1e-6 relative. Certification failures
// throw std::runtime_error.
LpSolution solve_config_lp(const std::vector<ConfigColumn>& columns,
                           const std::vector<int>& big_clients);

// Independently keeps each column with probability min{1, gamma x_T}.
std::vector<std::size_t> randomized_round(const LpSolution& lp, double gamma, std::uint64_t seed);

struct DerandomizeResult {
    std::vector<std::size_t> chosen;
    double phi_initial = 0.0;
    double phi_final = 0.0;
    bool monotone = true;  // phi never increased along the decision path
};

// Method of conditional expectation on the pessimistic estimator
//   phi = sum_in c(T) + sum_undecided min{1,gamma x_T} c(T) + tsp_full
//       + D_small/(1-delta) + sum_big survive(v) * (2/(1-delta)) * 2 (d_v/Q) c(r,v).
// Columns are decided in descending-cost order, each time taking the
// branch with the smaller estimator.
DerandomizeResult derandomize(const LpSolution& lp, const std::vector<ConfigColumn>& columns,
                              const Instance& inst, Delta delta, double tsp_full_cost);

enum class LpMode { sampled, derandomized };

// Everything that does not depend on the mode or seed: columns, the
// fractional optimum, and the full TSP tour the residual split rides on.
struct LpContext {
    Delta delta;
    std::vector<ConfigColumn> columns;
    LpSolution lp;
    TspResult tsp_full;
};

LpContext prepare_lp(const Instance& inst, Delta delta, TspAlgo tsp_alg);

struct LpCertificate {
    double lp_objective = 0.0;
    std::size_t num_columns = 0;
    double gamma = kGamma;
    double chosen_raw_cost = 0.0;  // sum of c(T) over chosen columns
    double tsp_full_cost = 0.0;
    double phi_initial = 0.0;      // derandomized mode only
    double phi_final = 0.0;
    bool phi_monotone = true;
    double returned_cost = 0.0;
    RadialBounds bounds;
};

// Algorithm: solve the configuration LP, choose big-client tours by
// rounding (sampled) or conditional expectation (derandomized), then
// serve the rest by dp-splitting the full TSP tour shortcut past the
// covered clients. Overlaps are resolved by first occurrence.
std::pair<Solution, LpCertificate> solve_lp_based(const Instance& inst, Delta delta, TspAlgo tsp_alg,
                                                  LpMode mode, std::uint64_t seed);

// Mode/seed-dependent tail of solve_lp_based on a prepared context.
std::pair<Solution, LpCertificate> solve_lp_with(const Instance& inst, const LpContext& ctx,
                                                 LpMode mode, std::uint64_t seed);

}  // namespace cvrp
