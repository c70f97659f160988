#include "cvrp/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvrp/rng.hpp"

namespace cvrp {

namespace {

// a < b up to a 1e-12 relative collar; positions that coincide within the
// collar are treated as equal so that boundary thetas follow the
// half-open tile convention exactly.
bool definitely_less(double a, double b) {
    const double eps = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    return a < b - eps;
}

std::vector<int> clients_in_order(const TspResult& tsp) {
    std::vector<int> order;
    for (int v : tsp.order)
        if (v != 0) order.push_back(v);
    return order;
}

}  // namespace

BadMarks mark_bad(const std::vector<std::int64_t>& demands, std::int64_t capacity, Delta delta,
                  double theta) {
    if (capacity < 1) throw std::invalid_argument("mark_bad: capacity must be positive");
    const double one_minus_delta = 1.0 - delta.value();
    if (theta < 0.0 || definitely_less(one_minus_delta, theta))
        throw std::invalid_argument("mark_bad: theta outside [0, 1-delta]");

    const std::size_t k = demands.size();
    BadMarks marks;
    marks.bad.assign(k, 0);
    marks.four_copy.assign(k, 0);

    // Everything is measured in units of 1/(q*Q) of the normalized line:
    // prefix demands become exact integers, tile endpoints stay float.
    const double unit = static_cast<double>(delta.den) * static_cast<double>(capacity);
    const double tile = static_cast<double>(delta.den - delta.num) * static_cast<double>(capacity);
    const double first = theta * unit;

    std::int64_t prefix = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (demands[i] < 0 || demands[i] > capacity)
            throw std::invalid_argument("mark_bad: demand outside [0, Q]");
        const std::int64_t lo = prefix * delta.den;
        prefix += demands[i];
        const std::int64_t hi = prefix * delta.den;
        if (lo == hi) continue;  // zero demand, empty interval

        // Smallest l with endpoint > lo (collared), then test endpoint <= hi.
        double l = std::floor((static_cast<double>(lo) - first) / tile) + 1.0;
        if (l < 0.0) l = 0.0;
        double endpoint = first + l * tile;
        if (!definitely_less(static_cast<double>(lo), endpoint)) endpoint = first + (l + 1.0) * tile;
        if (!definitely_less(static_cast<double>(hi), endpoint)) {
            marks.bad[i] = 1;
            // Four copies iff some endpoint is strictly below hi - delta*Q*q.
            const double four_limit = static_cast<double>(hi - delta.num * capacity);
            if (definitely_less(endpoint, four_limit)) marks.four_copy[i] = 1;
        }
    }
    return marks;
}

SplitOutcome split_at_theta(const TspResult& tsp, const Instance& inst, Delta delta, double theta) {
    SplitOutcome out;
    out.theta = theta;
    const auto order = clients_in_order(tsp);
    if (order.empty()) return out;

    std::vector<std::int64_t> demands;
    demands.reserve(order.size());
    for (int v : order) demands.push_back(inst.demand[v]);
    const auto marks = mark_bad(demands, inst.capacity, delta, theta);

    const auto cls = classify_clients(inst, delta);
    std::vector<int> current;
    auto close = [&] {
        if (!current.empty()) {
            out.tours.add(Tour::of(inst, current));
            current.clear();
        }
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        if (marks.bad[i]) {
            out.bad.push_back(v);
            if (marks.four_copy[i]) {
                if (!cls.is_big[v])
                    throw std::logic_error("split: small client marked for two round trips");
                out.four_copy.push_back(v);
                close();
                out.tours.add(Tour::of(inst, {v}));
                out.added_cost += 4.0 * inst.c(0, v);
            } else {
                current.push_back(v);
                close();
                out.added_cost += 2.0 * inst.c(0, v);
            }
        } else {
            current.push_back(v);
        }
    }
    close();
    return out;
}

SplitOutcome randomized_split(const TspResult& tsp, const Instance& inst, Delta delta,
                              std::uint64_t seed) {
    Rng rng(seed);
    const double theta = rng.next_unit() * (1.0 - delta.value());
    return split_at_theta(tsp, inst, delta, theta);
}

double split_bound(double tsp_cost, const RadialBounds& bounds) {
    const double f = 1.0 / (1.0 - bounds.delta.value());
    return tsp_cost + f * bounds.d_small + 2.0 * f * bounds.d_big -
           bounds.delta.value() * f * bounds.d_prime_big;
}

Solution dp_split(const TspResult& tsp, const Instance& inst) {
    Solution sol;
    const auto order = clients_in_order(tsp);
    const int k = static_cast<int>(order.size());
    if (k == 0) return sol;

    // path_cost[i] = cost of the TSP path order[0..i-1].
    std::vector<double> path_cost(k, 0.0);
    for (int i = 1; i < k; ++i)
        path_cost[i] = path_cost[i - 1] + inst.c(order[i - 1], order[i]);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(k + 1, inf);
    std::vector<int> prev(k + 1, -1);
    best[0] = 0.0;
    for (int j = 1; j <= k; ++j) {
        std::int64_t load = 0;
        for (int i = j - 1; i >= 0; --i) {
            load += inst.demand[order[i]];
            if (load > inst.capacity) break;
            const double seg = inst.c(0, order[i]) + (path_cost[j - 1] - path_cost[i]) +
                               inst.c(order[j - 1], 0);
            const double cand = best[i] + seg;
            if (cand < best[j] || (cand == best[j] && i < prev[j])) {
                best[j] = cand;
                prev[j] = i;
            }
        }
        if (prev[j] < 0) throw std::logic_error("dp_split: client demand exceeds capacity");
    }

    std::vector<std::pair<int, int>> segments;
    for (int j = k; j > 0; j = prev[j]) segments.push_back({prev[j], j});
    std::reverse(segments.begin(), segments.end());
    for (const auto& [i, j] : segments)
        sol.add(Tour::of(inst, std::vector<int>(order.begin() + i, order.begin() + j)));
    return sol;
}

}  // namespace cvrp
