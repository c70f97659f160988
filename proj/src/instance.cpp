#include "cvrp/instance.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cvrp {

std::int64_t Instance::total_demand() const {
    std::int64_t total = 0;
    for (int v = 1; v <= num_clients(); ++v) total += demand[v];
    return total;
}

Instance Instance::from_matrix(std::string name, std::int64_t capacity,
                               std::vector<std::int64_t> client_demands,
                               const std::vector<std::vector<double>>& matrix) {
    const std::size_t m = client_demands.size() + 1;
    if (matrix.size() != m)
        throw std::invalid_argument("from_matrix: matrix size does not match demand count");
    Instance inst;
    inst.name = std::move(name);
    inst.capacity = capacity;
    inst.demand.assign(m, 0);
    for (std::size_t i = 0; i < client_demands.size(); ++i) inst.demand[i + 1] = client_demands[i];
    inst.cost.assign(m * m, 0.0);
    for (std::size_t u = 0; u < m; ++u) {
        if (matrix[u].size() != m)
            throw std::invalid_argument("from_matrix: matrix is not square");
        for (std::size_t v = 0; v < m; ++v) inst.cost[u * m + v] = matrix[u][v];
    }
    return inst;
}

Tour Tour::of(const Instance& inst, std::vector<int> clients) {
    Tour t;
    t.clients = std::move(clients);
    if (t.clients.empty()) return t;
    double c = inst.c(0, t.clients.front());
    for (std::size_t i = 0; i + 1 < t.clients.size(); ++i)
        c += inst.c(t.clients[i], t.clients[i + 1]);
    c += inst.c(t.clients.back(), 0);
    t.cost = c;
    for (int v : t.clients) t.load += inst.demand[v];
    return t;
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    const int m = inst.num_nodes();
    if (m == 0 || inst.cost.size() != static_cast<std::size_t>(m) * m) {
        report.violations.push_back({"cost matrix size does not match node count", true});
        return report;
    }
    if (inst.capacity < 1) report.violations.push_back({"capacity must be positive", true});

    double max_cost = 0.0;
    for (double w : inst.cost) max_cost = std::max(max_cost, std::abs(w));

    for (int u = 0; u < m; ++u) {
        if (inst.c(u, u) != 0.0) {
            report.violations.push_back({"nonzero diagonal at node " + std::to_string(u), true});
            return report;
        }
        for (int v = u + 1; v < m; ++v) {
            const double w = inst.c(u, v);
            if (!std::isfinite(w) || w < 0.0) {
                report.violations.push_back(
                    {"cost(" + std::to_string(u) + "," + std::to_string(v) + ") not finite nonnegative", true});
                return report;
            }
            if (w != inst.c(v, u)) {
                report.violations.push_back(
                    {"asymmetric cost at (" + std::to_string(u) + "," + std::to_string(v) + ")", true});
                return report;
            }
        }
    }

    // Triangle check; rounded CVRPLIB matrices may be off by +-1, so for
    // those the finding is advisory.
    const double tol = 1e-9 * std::max(1.0, max_cost);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            if (v == u) continue;
            for (int w = 0; w < m; ++w) {
                if (w == u || w == v) continue;
                if (inst.c(u, w) > inst.c(u, v) + inst.c(v, w) + tol) {
                    std::ostringstream msg;
                    msg << "triangle violation at (" << u << "," << v << "," << w << "): "
                        << inst.c(u, w) << " > " << inst.c(u, v) << " + " << inst.c(v, w);
                    report.violations.push_back({msg.str(), !inst.rounded_costs});
                    return report;
                }
            }
        }

    for (int v = 1; v < m; ++v) {
        if (inst.demand[v] <= 0 || inst.demand[v] > inst.capacity) {
            report.violations.push_back({"demand of client " + std::to_string(v) +
                                             " outside (0, Q]: " + std::to_string(inst.demand[v]),
                                         true});
            return report;
        }
    }
    if (inst.demand[0] != 0) report.violations.push_back({"depot demand must be zero", true});
    return report;
}

Classification classify_clients(const Instance& inst, Delta delta) {
    Classification cls;
    cls.is_big.assign(inst.num_nodes(), 0);
    for (int v = 1; v <= inst.num_clients(); ++v) {
        // small iff demand/Q <= p/q  <=>  demand*q <= p*Q
        if (inst.demand[v] * delta.den <= delta.num * inst.capacity) {
            cls.small.push_back(v);
        } else {
            cls.big.push_back(v);
            cls.is_big[v] = 1;
        }
    }
    return cls;
}

RadialBounds radial_bounds(const Instance& inst, Delta delta) {
    RadialBounds rb;
    rb.delta = delta;
    const auto cls = classify_clients(inst, delta);
    const double q = static_cast<double>(inst.capacity);
    for (int v = 1; v <= inst.num_clients(); ++v) {
        const double term = 2.0 * (static_cast<double>(inst.demand[v]) / q) * inst.c(0, v);
        if (cls.is_big[v]) {
            rb.d_big += term;
            rb.d_prime_big += 2.0 * inst.c(0, v);
        } else {
            rb.d_small += term;
        }
    }
    rb.d_total = rb.d_small + rb.d_big;
    return rb;
}

double solution_cost(const Solution& sol, const Instance& inst) {
    double total = 0.0;
    for (const auto& t : sol.tours) total += Tour::of(inst, t.clients).cost;
    return total;
}

ValidationReport validate_solution(const Solution& sol, const Instance& inst) {
    ValidationReport report;
    std::vector<char> seen(inst.num_nodes(), 0);
    for (const auto& t : sol.tours) {
        std::int64_t load = 0;
        for (int v : t.clients) {
            if (v < 1 || v > inst.num_clients()) {
                report.violations.push_back({"unknown client " + std::to_string(v), true});
                return report;
            }
            if (seen[v]) {
                report.violations.push_back({"client " + std::to_string(v) + " served twice", true});
                return report;
            }
            seen[v] = 1;
            load += inst.demand[v];
        }
        if (load > inst.capacity) {
            report.violations.push_back({"tour overloaded: " + std::to_string(load) + " > Q=" +
                                             std::to_string(inst.capacity),
                                         true});
            return report;
        }
        if (t.clients.empty()) {
            report.violations.push_back({"empty tour", true});
            return report;
        }
    }
    for (int v = 1; v <= inst.num_clients(); ++v)
        if (!seen[v]) {
            report.violations.push_back({"client " + std::to_string(v) + " not served", true});
            return report;
        }
    const double recomputed = solution_cost(sol, inst);
    if (std::abs(recomputed - sol.total_cost) > 1e-9 * std::max(1.0, std::abs(recomputed)))
        report.violations.push_back({"stored total_cost differs from recomputed cost", true});
    return report;
}

}  // namespace cvrp
