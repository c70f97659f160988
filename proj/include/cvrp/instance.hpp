#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cvrp/rational.hpp"

namespace cvrp {

// A CVRP instance. Node 0 is always the depot; clients are 1..n.
// Demands and the capacity stay raw integers, the normalized demand
// d_v = demand(v)/Q is only ever formed inside cost formulas.
struct Instance {
    std::string name;
    std::int64_t capacity = 1;
    std::vector<std::int64_t> demand;        // indexed by node, demand[0] == 0
    std::vector<double> cost;                // dense (n+1) x (n+1), row-major
    std::vector<std::array<double, 2>> coords;  // optional, same indexing; empty if unknown
    bool rounded_costs = false;              // true for nearest-integer CVRPLIB matrices

    int num_clients() const { return static_cast<int>(demand.size()) - 1; }
    int num_nodes() const { return static_cast<int>(demand.size()); }

    double c(int u, int v) const { return cost[static_cast<std::size_t>(u) * num_nodes() + v]; }
    double& c(int u, int v) { return cost[static_cast<std::size_t>(u) * num_nodes() + v]; }

    std::int64_t total_demand() const;

    // Builds an instance from a full symmetric cost matrix (row/col 0 = depot)
    // and per-client demands (demands[i] is client i+1).
    static Instance from_matrix(std::string name, std::int64_t capacity,
                                std::vector<std::int64_t> client_demands,
                                const std::vector<std::vector<double>>& matrix);
};

struct Tour {
    std::vector<int> clients;  // distinct client ids, depot implicit at both ends
    std::int64_t load = 0;
    double cost = 0.0;

    static Tour of(const Instance& inst, std::vector<int> clients);
};

struct Solution {
    std::vector<Tour> tours;
    double total_cost = 0.0;

    void add(Tour t) {
        total_cost += t.cost;
        tours.push_back(std::move(t));
    }
};

// Per-delta radial lower bound terms:
//   D       = sum_v 2 (d_v/Q) c(r,v)
//   D_small = the same sum over small clients, D_big over big clients
//   D'_big  = sum_{big} 2 c(r,v), the cost of one round trip per big client
struct RadialBounds {
    Delta delta;
    double d_total = 0.0;
    double d_small = 0.0;
    double d_big = 0.0;
    double d_prime_big = 0.0;
};

struct Violation {
    std::string what;
    bool hard = true;  // false = advisory (warning only)
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        for (const auto& v : violations)
            if (v.hard) return false;
        return true;
    }
    std::string first_error() const {
        for (const auto& v : violations)
            if (v.hard) return v.what;
        return {};
    }
};

// Checks symmetry, zero diagonal, nonnegative finite costs, the triangle
// inequality (tol = 1e-9 * max entry; advisory for rounded matrices) and
// 0 < demand <= Q per client.
ValidationReport validate_instance(const Instance& inst);

struct Classification {
    std::vector<int> small;
    std::vector<int> big;
    std::vector<char> is_big;  // indexed by node id
};

// v is small iff demand(v)/Q <= delta, compared exactly in integers.
Classification classify_clients(const Instance& inst, Delta delta);

RadialBounds radial_bounds(const Instance& inst, Delta delta);

double solution_cost(const Solution& sol, const Instance& inst);

// Exact-once coverage, per-tour loads, distinctness, recomputed costs.
ValidationReport validate_solution(const Solution& sol, const Instance& inst);

}  // namespace cvrp
