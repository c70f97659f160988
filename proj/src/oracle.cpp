#include "cvrp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cvrp/graph.hpp"

namespace cvrp {

namespace {

// Optimal depot tour cost for every client subset at once:
// dp[mask][j] = cheapest path depot -> ... -> client j+1 covering mask.
std::vector<double> all_subset_tour_costs(const Instance& inst) {
    const int n = inst.num_clients();
    const std::size_t full = std::size_t(1) << n;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(full * n, inf);
    for (int j = 0; j < n; ++j) dp[(std::size_t(1) << j) * n + j] = inst.c(0, j + 1);
    for (std::size_t mask = 1; mask < full; ++mask)
        for (int j = 0; j < n; ++j) {
            if (!(mask & (std::size_t(1) << j))) continue;
            const double cur = dp[mask * n + j];
            if (!std::isfinite(cur)) continue;
            for (int t = 0; t < n; ++t) {
                if (mask & (std::size_t(1) << t)) continue;
                const std::size_t nmask = mask | (std::size_t(1) << t);
                const double cand = cur + inst.c(j + 1, t + 1);
                if (cand < dp[nmask * n + t]) dp[nmask * n + t] = cand;
            }
        }
    std::vector<double> tour(full, 0.0);
    for (std::size_t mask = 1; mask < full; ++mask) {
        double best = inf;
        for (int j = 0; j < n; ++j)
            if (mask & (std::size_t(1) << j)) best = std::min(best, dp[mask * n + j] + inst.c(j + 1, 0));
        tour[mask] = best;
    }
    return tour;
}

}  // namespace

OracleResult exact_cvrp(const Instance& inst) {
    const int n = inst.num_clients();
    if (n > 14) throw std::invalid_argument("exact_cvrp: limited to 14 clients, got " + std::to_string(n));
    OracleResult result;
    const auto start = std::chrono::steady_clock::now();
    if (n == 0) return result;

    const std::size_t full = std::size_t(1) << n;
    const auto tour_cost = all_subset_tour_costs(inst);

    std::vector<std::int64_t> mask_demand(full, 0);
    for (std::size_t mask = 1; mask < full; ++mask) {
        const int low = std::countr_zero(mask);
        mask_demand[mask] = mask_demand[mask & (mask - 1)] + inst.demand[low + 1];
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> f(full, inf);
    std::vector<std::size_t> choice(full, 0);
    f[0] = 0.0;
    std::uint64_t enumerated = 0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        const std::size_t low_bit = mask & (0 - mask);
        // Blocks containing the lowest-index client of mask; the final
        // descending submask overwrite on ties keeps the smallest block.
        for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
            if (sub & low_bit) {
                ++enumerated;
                if (mask_demand[sub] <= inst.capacity) {
                    const double cand = f[mask ^ sub] + tour_cost[sub];
                    if (cand <= f[mask]) {
                        f[mask] = cand;
                        choice[mask] = sub;
                    }
                }
            }
            if (sub == 0) break;
        }
    }
    result.opt_cost = f[full - 1];
    result.subsets_enumerated = enumerated;

    for (std::size_t mask = full - 1; mask;) {
        const std::size_t block = choice[mask];
        std::vector<int> nodes{0};
        for (int j = 0; j < n; ++j)
            if (block & (std::size_t(1) << j)) nodes.push_back(j + 1);
        const auto tsp = held_karp_tsp(nodes, [&](int u, int v) { return inst.c(u, v); });
        std::vector<int> clients(tsp.order.begin() + 1, tsp.order.end());
        result.opt_tours.add(Tour::of(inst, clients));
        mask ^= block;
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

// Cheapest depot tour through exactly the given clients, by trying every
// permutation.
double permutation_tour_cost(const Instance& inst, std::vector<int> clients) {
    if (clients.empty()) return 0.0;
    std::sort(clients.begin(), clients.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = inst.c(0, clients.front());
        for (std::size_t i = 0; i + 1 < clients.size(); ++i) c += inst.c(clients[i], clients[i + 1]);
        c += inst.c(clients.back(), 0);
        best = std::min(best, c);
    } while (std::next_permutation(clients.begin(), clients.end()));
    return best;
}

void enumerate_partitions(const Instance& inst, std::size_t remaining, double acc,
                          const std::vector<double>& block_cost, double& best) {
    if (acc >= best) return;
    if (remaining == 0) {
        best = acc;
        return;
    }
    const int n = inst.num_clients();
    const std::size_t low_bit = remaining & (0 - remaining);
    for (std::size_t sub = remaining;; sub = (sub - 1) & remaining) {
        if (sub & low_bit) {
            std::int64_t demand = 0;
            for (int j = 0; j < n; ++j)
                if (sub & (std::size_t(1) << j)) demand += inst.demand[j + 1];
            if (demand <= inst.capacity)
                enumerate_partitions(inst, remaining ^ sub, acc + block_cost[sub], block_cost, best);
        }
        if (sub == 0) break;
    }
}

}  // namespace

CrossCheckReport cross_check(const Instance& inst) {
    const int n = inst.num_clients();
    if (n > 9) throw std::invalid_argument("cross_check: limited to 9 clients");
    CrossCheckReport report;
    report.exact_cost = exact_cvrp(inst).opt_cost;

    const std::size_t full = std::size_t(1) << n;
    std::vector<double> block_cost(full, 0.0);
    for (std::size_t mask = 1; mask < full; ++mask) {
        std::vector<int> clients;
        for (int j = 0; j < n; ++j)
            if (mask & (std::size_t(1) << j)) clients.push_back(j + 1);
        block_cost[mask] = permutation_tour_cost(inst, clients);
    }
    double best = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    enumerate_partitions(inst, full - 1, 0.0, block_cost, best);
    report.enumerated_cost = best;
    report.agree = std::abs(report.exact_cost - report.enumerated_cost) <=
                   1e-9 * std::max(1.0, std::abs(report.exact_cost));
    return report;
}

}  // namespace cvrp
