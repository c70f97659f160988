#include "cvrp/solver_comb.hpp"

#include <cmath>
#include <sstream>

#include "cvrp/split.hpp"

namespace cvrp {

AuxGraph build_aux_graph(const Instance& inst) {
    AuxGraph aux;
    aux.big = classify_clients(inst, kCombDelta).big;
    const int k = static_cast<int>(aux.big.size());
    aux.graph = WeightedGraph(k);
    for (int i = 0; i < k; ++i) {
        const int u = aux.big[i];
        aux.graph.set_loop(i, 2.0 * inst.c(0, u));
        for (int j = i + 1; j < k; ++j) {
            const int v = aux.big[j];
            if (inst.demand[u] + inst.demand[v] <= inst.capacity)
                aux.graph.add_edge(i, j, inst.c(0, u) + inst.c(u, v) + inst.c(v, 0));
        }
    }
    return aux;
}

BigMatchResult match_big(const AuxGraph& aux, const Instance& inst) {
    BigMatchResult result;
    if (aux.big.empty()) return result;
    result.matching = min_weight_perfect_matching(aux.graph);
    for (int i : result.matching.loops) result.tours.push_back(Tour::of(inst, {aux.big[i]}));
    for (const auto& [i, j] : result.matching.pairs)
        result.tours.push_back(Tour::of(inst, {aux.big[i], aux.big[j]}));
    return result;
}

std::pair<Solution, CombCertificate> solve_combinatorial(const Instance& inst, TspAlgo tsp_alg) {
    CombCertificate cert;
    cert.bounds = radial_bounds(inst, kCombDelta);
    const auto cls = classify_clients(inst, kCombDelta);
    const auto metric = [&](int u, int v) { return inst.c(u, v); };

    // Candidate 1: matched big-client tours plus the split small-client tour.
    const auto aux = build_aux_graph(inst);
    const auto big_match = match_big(aux, inst);
    cert.cost_m = big_match.matching.weight;

    std::vector<int> small_nodes{0};
    small_nodes.insert(small_nodes.end(), cls.small.begin(), cls.small.end());
    const auto tsp_small = solve_tsp(tsp_alg, small_nodes, metric);
    cert.tsp_small_cost = tsp_small.cost;
    Solution first;
    for (const auto& t : big_match.tours) first.add(t);
    for (auto& t : dp_split(tsp_small, inst).tours) first.add(std::move(t));
    cert.cost_t = first.total_cost;

    // Candidate 2: split of a tour over everything.
    std::vector<int> all_nodes{0};
    for (int v = 1; v <= inst.num_clients(); ++v) all_nodes.push_back(v);
    const auto tsp_full = solve_tsp(tsp_alg, all_nodes, metric);
    cert.tsp_full_cost = tsp_full.cost;
    Solution second = dp_split(tsp_full, inst);
    cert.cost_f = second.total_cost;

    const auto& bounds = cert.bounds;
    const auto check = [&](bool ok, const char* what, double lhs, double rhs) {
        if (!ok && cert.ledger_ok) {
            cert.ledger_ok = false;
            std::ostringstream msg;
            msg << what << ": " << lhs << " > " << rhs;
            cert.ledger_failure = msg.str();
        }
    };
    const auto tol = [](double x) { return 1e-6 * std::max(1.0, std::abs(x)); };
    check(cert.cost_m <= bounds.d_prime_big + tol(bounds.d_prime_big), "cost(M) <= D'_big",
          cert.cost_m, bounds.d_prime_big);
    const double bound_t = cert.cost_m + cert.tsp_small_cost + 1.5 * bounds.d_small;
    check(cert.cost_t <= bound_t + tol(bound_t), "cost(T) ledger", cert.cost_t, bound_t);
    const double bound_f = cert.tsp_full_cost + 1.5 * bounds.d_small + 3.0 * bounds.d_big -
                           0.5 * bounds.d_prime_big;
    check(cert.cost_f <= bound_f + tol(bound_f), "cost(F) ledger", cert.cost_f, bound_f);

    Solution result = cert.cost_t <= cert.cost_f ? std::move(first) : std::move(second);
    cert.returned_cost = result.total_cost;
    check(cert.returned_cost <= (cert.cost_t + cert.cost_f) / 2.0 + tol(cert.returned_cost),
          "min <= average", cert.returned_cost, (cert.cost_t + cert.cost_f) / 2.0);
    return {std::move(result), cert};
}

}  // namespace cvrp
