#include "cvrp/solver_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvrp/lp.hpp"
#include "cvrp/rng.hpp"
#include "cvrp/split.hpp"

namespace cvrp {

namespace {

constexpr double kZeroX = 1e-12;

double clamp_prob(double gamma, double x) { return std::min(1.0, gamma * x); }

}  // namespace

std::vector<ConfigColumn> enumerate_columns(const Instance& inst, Delta delta,
                                            std::size_t max_columns) {
    if (delta.num == 0) throw std::invalid_argument("enumerate_columns: delta must be positive");
    if (6 * delta.num < delta.den)
        throw std::invalid_argument("enumerate_columns: delta below 1/6 not supported");
    const auto big = classify_clients(inst, delta).big;
    const std::size_t k_max = static_cast<std::size_t>(delta.inverse_floor());

    std::vector<ConfigColumn> columns;
    const auto metric = [&](int u, int v) { return inst.c(u, v); };
    std::vector<int> stack;

    // Depth-first over big-client indices; every prefix of a feasible set
    // is feasible, so pruning by load is exact.
    auto extend = [&](auto&& self, std::size_t from, std::int64_t load) -> void {
        for (std::size_t i = from; i < big.size(); ++i) {
            const std::int64_t next = load + inst.demand[big[i]];
            if (next > inst.capacity) continue;
            stack.push_back(big[i]);
            if (columns.size() >= max_columns)
                throw std::runtime_error("enumerate_columns: column budget exceeded");
            ConfigColumn col;
            col.clients = stack;
            std::vector<int> nodes{0};
            nodes.insert(nodes.end(), stack.begin(), stack.end());
            const auto tsp = held_karp_tsp(nodes, metric);
            col.tour_order.assign(tsp.order.begin() + 1, tsp.order.end());
            col.cost = tsp.cost;
            columns.push_back(std::move(col));
            if (stack.size() < k_max) self(self, i + 1, next);
            stack.pop_back();
        }
    };
    extend(extend, 0, 0);
    return columns;
}

LpSolution solve_config_lp(const std::vector<ConfigColumn>& columns,
                           const std::vector<int>& big_clients) {
    LpSolution sol;
    sol.big = big_clients;
    sol.x.assign(columns.size(), 0.0);
    sol.duals.assign(big_clients.size(), 0.0);
    if (big_clients.empty()) return sol;

    std::vector<int> row_of(1 + *std::max_element(big_clients.begin(), big_clients.end()), -1);
    for (std::size_t i = 0; i < big_clients.size(); ++i) row_of[big_clients[i]] = static_cast<int>(i);

    CoveringLp lp;
    lp.rows = static_cast<int>(big_clients.size());
    lp.columns.reserve(columns.size());
    lp.costs.reserve(columns.size());
    for (const auto& col : columns) {
        std::vector<int> rows;
        for (int v : col.clients) rows.push_back(row_of[v]);
        lp.columns.push_back(std::move(rows));
        lp.costs.push_back(col.cost);
    }
    const auto res = solve_covering_lp(lp);
    sol.x = res.x;
    sol.objective = res.objective;
    sol.duals = res.duals;
    sol.iterations = res.iterations;

    // Certify: primal coverage, dual feasibility, weak-duality gap.
    std::vector<double> coverage(big_clients.size(), 0.0);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (sol.x[j] < -1e-9) throw std::runtime_error("config LP: negative x");
        for (int v : columns[j].clients) coverage[row_of[v]] += sol.x[j];
    }
    for (std::size_t i = 0; i < coverage.size(); ++i)
        if (coverage[i] < 1.0 - 1e-7)
            throw std::runtime_error("config LP: client " + std::to_string(big_clients[i]) +
                                     " covered only " + std::to_string(coverage[i]));
    double dual_sum = 0.0;
    for (std::size_t i = 0; i < sol.duals.size(); ++i) {
        if (sol.duals[i] < -1e-7) throw std::runtime_error("config LP: negative dual");
        dual_sum += sol.duals[i];
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        double y = 0.0;
        for (int v : columns[j].clients) y += sol.duals[row_of[v]];
        if (y > columns[j].cost + 1e-6 * std::max(1.0, columns[j].cost))
            throw std::runtime_error("config LP: dual infeasibility on column " + std::to_string(j));
    }
    if (std::abs(sol.objective - dual_sum) > 1e-6 * std::max(1.0, std::abs(sol.objective)))
        throw std::runtime_error("config LP: duality gap too large");
    return sol;
}

std::vector<std::size_t> randomized_round(const LpSolution& lp, double gamma, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < lp.x.size(); ++j) {
        const double p = clamp_prob(gamma, lp.x[j]);
        if (rng.next_unit() < p) chosen.push_back(j);
    }
    return chosen;
}

DerandomizeResult derandomize(const LpSolution& lp, const std::vector<ConfigColumn>& columns,
                              const Instance& inst, Delta delta, double tsp_full_cost) {
    DerandomizeResult result;
    const double factor = 2.0 / (1.0 - delta.value());
    const auto bounds = radial_bounds(inst, delta);

    std::vector<double> weight(inst.num_nodes(), 0.0);  // survival penalty per big client
    for (int v : lp.big)
        weight[v] = factor * 2.0 * (static_cast<double>(inst.demand[v]) / inst.capacity) * inst.c(0, v);

    std::vector<double> p(columns.size(), 0.0);
    std::vector<int> state(columns.size(), 0);  // 0 undecided, 1 in, -1 out
    for (std::size_t j = 0; j < columns.size(); ++j) {
        p[j] = lp.x[j] < kZeroX ? 0.0 : clamp_prob(kGamma, lp.x[j]);
        if (p[j] == 0.0) state[j] = -1;
    }

    std::vector<std::vector<std::size_t>> undecided_at(inst.num_nodes());
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (state[j] == 0)
            for (int v : columns[j].clients) undecided_at[v].push_back(j);

    std::vector<char> covered(inst.num_nodes(), 0);
    std::vector<double> survive(inst.num_nodes(), 0.0);
    auto recompute_survive = [&](int v) {
        if (covered[v]) {
            survive[v] = 0.0;
            return;
        }
        double prod = 1.0;
        for (std::size_t j : undecided_at[v])
            if (state[j] == 0) prod *= 1.0 - p[j];
        survive[v] = prod;
    };
    for (int v : lp.big) recompute_survive(v);

    double phi = tsp_full_cost + bounds.d_small / (1.0 - delta.value());
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (state[j] == 0) phi += p[j] * columns[j].cost;
    for (int v : lp.big) phi += survive[v] * weight[v];
    result.phi_initial = phi;

    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (state[j] == 0) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (columns[a].cost != columns[b].cost) return columns[a].cost > columns[b].cost;
        return a < b;
    });

    double prev_phi = phi;
    for (std::size_t j : order) {
        // Deciding j in: its expected-cost term becomes a real cost and
        // its clients stop contributing survival penalties.
        double delta_in = (1.0 - p[j]) * columns[j].cost;
        for (int v : columns[j].clients)
            if (!covered[v]) delta_in -= survive[v] * weight[v];

        double delta_out = -p[j] * columns[j].cost;
        std::vector<std::pair<int, double>> survive_out;
        for (int v : columns[j].clients) {
            if (covered[v]) continue;
            double prod = 1.0;
            for (std::size_t t : undecided_at[v])
                if (state[t] == 0 && t != j) prod *= 1.0 - p[t];
            survive_out.push_back({v, prod});
            delta_out += (prod - survive[v]) * weight[v];
        }

        const bool take = p[j] >= 1.0 - 1e-15 || delta_in <= delta_out;
        if (take) {
            state[j] = 1;
            result.chosen.push_back(j);
            for (int v : columns[j].clients) {
                covered[v] = 1;
                survive[v] = 0.0;
            }
            phi += delta_in;
        } else {
            state[j] = -1;
            for (const auto& [v, prod] : survive_out) survive[v] = prod;
            phi += delta_out;
        }
        if (phi > prev_phi + 1e-9 * std::max(1.0, std::abs(prev_phi))) result.monotone = false;
        prev_phi = phi;
    }
    result.phi_final = phi;
    std::sort(result.chosen.begin(), result.chosen.end());
    return result;
}

LpContext prepare_lp(const Instance& inst, Delta delta, TspAlgo tsp_alg) {
    LpContext ctx;
    ctx.delta = delta;
    ctx.columns = enumerate_columns(inst, delta);
    ctx.lp = solve_config_lp(ctx.columns, classify_clients(inst, delta).big);
    std::vector<int> all_nodes{0};
    for (int v = 1; v <= inst.num_clients(); ++v) all_nodes.push_back(v);
    ctx.tsp_full = solve_tsp(tsp_alg, all_nodes, [&](int u, int v) { return inst.c(u, v); });
    return ctx;
}

std::pair<Solution, LpCertificate> solve_lp_based(const Instance& inst, Delta delta, TspAlgo tsp_alg,
                                                  LpMode mode, std::uint64_t seed) {
    return solve_lp_with(inst, prepare_lp(inst, delta, tsp_alg), mode, seed);
}

std::pair<Solution, LpCertificate> solve_lp_with(const Instance& inst, const LpContext& ctx,
                                                 LpMode mode, std::uint64_t seed) {
    const Delta delta = ctx.delta;
    const auto& columns = ctx.columns;
    const auto& lp = ctx.lp;
    const auto& tsp_full = ctx.tsp_full;

    LpCertificate cert;
    cert.bounds = radial_bounds(inst, delta);
    cert.num_columns = columns.size();
    cert.lp_objective = lp.objective;
    cert.tsp_full_cost = tsp_full.cost;

    std::vector<std::size_t> chosen;
    if (mode == LpMode::derandomized) {
        const auto der = derandomize(lp, columns, inst, delta, tsp_full.cost);
        chosen = der.chosen;
        cert.phi_initial = der.phi_initial;
        cert.phi_final = der.phi_final;
        cert.phi_monotone = der.monotone;
    } else {
        chosen = randomized_round(lp, kGamma, seed);
    }

    // Chosen tours first (in enumeration order), each shortcut past
    // clients already covered; the remainder rides the split of the full
    // tour shortcut past everything covered.
    Solution sol;
    std::vector<char> covered(inst.num_nodes(), 0);
    for (std::size_t j : chosen) {
        cert.chosen_raw_cost += columns[j].cost;
        std::vector<int> kept;
        for (int v : columns[j].tour_order)
            if (!covered[v]) {
                covered[v] = 1;
                kept.push_back(v);
            }
        if (!kept.empty()) sol.add(Tour::of(inst, kept));
    }

    TspResult residual;
    residual.guarantee = tsp_full.guarantee;
    for (int v : tsp_full.order)
        if (v == 0 || !covered[v]) residual.order.push_back(v);
    for (std::size_t i = 0; i < residual.order.size(); ++i) {
        const int u = residual.order[i];
        const int v = residual.order[(i + 1) % residual.order.size()];
        residual.cost += inst.c(u, v);
    }
    if (residual.order.size() <= 1) residual.cost = 0.0;
    for (auto& t : dp_split(residual, inst).tours) sol.add(std::move(t));

    cert.returned_cost = sol.total_cost;
    return {std::move(sol), cert};
}

}  // namespace cvrp
