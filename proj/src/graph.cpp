#include "cvrp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cvrp {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

double cycle_cost(const std::vector<int>& order, const DistFn& metric) {
    if (order.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) total += metric(order[i], order[i + 1]);
    total += metric(order.back(), order.front());
    return total;
}

}  // namespace

std::vector<WeightedGraph::Edge> mst(const std::vector<int>& nodes, const DistFn& metric) {
    if (nodes.empty()) throw std::invalid_argument("mst: empty node set");
    const int k = static_cast<int>(nodes.size());
    struct Cand {
        double w;
        int i, j;  // indices into `nodes`
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) cands.push_back({metric(nodes[i], nodes[j]), i, j});
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
        if (a.w != b.w) return a.w < b.w;
        if (nodes[a.i] != nodes[b.i]) return nodes[a.i] < nodes[b.i];
        return nodes[a.j] < nodes[b.j];
    });
    Dsu dsu(k);
    std::vector<WeightedGraph::Edge> tree;
    for (const auto& c : cands) {
        if (dsu.unite(c.i, c.j)) {
            tree.push_back({nodes[c.i], nodes[c.j], c.w});
            if (static_cast<int>(tree.size()) == k - 1) break;
        }
    }
    return tree;
}

std::vector<int> eulerian_shortcut(const std::vector<std::pair<int, int>>& multi_edges, int start) {
    if (multi_edges.empty()) return {start};

    // Compact node ids.
    std::map<int, int> local;
    local[start];
    for (const auto& [u, v] : multi_edges) {
        local[u];
        local[v];
    }
    int next = 0;
    for (auto& [node, id] : local) id = next++;
    const int k = next;

    std::vector<int> original(k);
    for (const auto& [node, id] : local) original[id] = node;

    std::vector<std::vector<std::pair<int, int>>> adj(k);  // (neighbor, edge id)
    for (std::size_t e = 0; e < multi_edges.size(); ++e) {
        const int u = local[multi_edges[e].first];
        const int v = local[multi_edges[e].second];
        adj[u].push_back({v, static_cast<int>(e)});
        adj[v].push_back({u, static_cast<int>(e)});
    }
    for (int v = 0; v < k; ++v) {
        if (adj[v].size() % 2 != 0)
            throw std::invalid_argument("eulerian_shortcut: odd degree at node " +
                                        std::to_string(original[v]));
        std::sort(adj[v].begin(), adj[v].end(), [&](const auto& a, const auto& b) {
            if (original[a.first] != original[b.first]) return original[a.first] < original[b.first];
            return a.second < b.second;
        });
    }
    const int s = local[start];
    if (adj[s].empty()) throw std::invalid_argument("eulerian_shortcut: start node is isolated");

    // Hierholzer.
    std::vector<char> used(multi_edges.size(), 0);
    std::vector<std::size_t> next_arc(k, 0);
    std::vector<int> stack{s};
    std::vector<int> circuit;
    while (!stack.empty()) {
        const int v = stack.back();
        while (next_arc[v] < adj[v].size() && used[adj[v][next_arc[v]].second]) ++next_arc[v];
        if (next_arc[v] == adj[v].size()) {
            circuit.push_back(v);
            stack.pop_back();
        } else {
            const auto [to, eid] = adj[v][next_arc[v]];
            used[eid] = 1;
            stack.push_back(to);
        }
    }
    if (circuit.size() != multi_edges.size() + 1)
        throw std::invalid_argument("eulerian_shortcut: multigraph is not connected");
    std::reverse(circuit.begin(), circuit.end());

    std::vector<char> seen(k, 0);
    std::vector<int> tour;
    for (int v : circuit)
        if (!seen[v]) {
            seen[v] = 1;
            tour.push_back(original[v]);
        }
    return tour;
}

TspResult held_karp_tsp(const std::vector<int>& nodes, const DistFn& metric) {
    const int k = static_cast<int>(nodes.size());
    if (k == 0) throw std::invalid_argument("held_karp: empty node set");
    if (k > 20) throw std::invalid_argument("held_karp: node limit is 20, got " + std::to_string(k));
    TspResult res;
    res.guarantee = 1.0;
    if (k == 1) {
        res.order = {nodes[0]};
        return res;
    }
    if (k == 2) {
        res.order = {nodes[0], nodes[1]};
        res.cost = 2.0 * metric(nodes[0], nodes[1]);
        return res;
    }
    const int m = k - 1;  // nodes[1..] relative to start nodes[0]
    const std::size_t full = std::size_t(1) << m;
    std::vector<double> dp(full * m, std::numeric_limits<double>::infinity());
    std::vector<std::int8_t> parent(full * m, -1);
    for (int j = 0; j < m; ++j) dp[(std::size_t(1) << j) * m + j] = metric(nodes[0], nodes[j + 1]);
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask & (std::size_t(1) << j))) continue;
            const double cur = dp[mask * m + j];
            if (!std::isfinite(cur)) continue;
            for (int t = 0; t < m; ++t) {
                if (mask & (std::size_t(1) << t)) continue;
                const std::size_t nmask = mask | (std::size_t(1) << t);
                const double cand = cur + metric(nodes[j + 1], nodes[t + 1]);
                if (cand < dp[nmask * m + t]) {
                    dp[nmask * m + t] = cand;
                    parent[nmask * m + t] = static_cast<std::int8_t>(j);
                }
            }
        }
    }
    double best = std::numeric_limits<double>::infinity();
    int best_end = -1;
    for (int j = 0; j < m; ++j) {
        const double cand = dp[(full - 1) * m + j] + metric(nodes[j + 1], nodes[0]);
        if (cand < best) {
            best = cand;
            best_end = j;
        }
    }
    std::vector<int> rev;
    std::size_t mask = full - 1;
    int j = best_end;
    while (j >= 0) {
        rev.push_back(nodes[j + 1]);
        const int pj = parent[mask * m + j];
        mask &= ~(std::size_t(1) << j);
        j = pj;
    }
    res.order.push_back(nodes[0]);
    res.order.insert(res.order.end(), rev.rbegin(), rev.rend());
    res.cost = best;
    return res;
}

namespace {

TspResult tour_from_multigraph(const std::vector<int>& nodes,
                               const std::vector<std::pair<int, int>>& multi_edges,
                               const DistFn& metric, double guarantee) {
    TspResult res;
    res.guarantee = guarantee;
    res.order = eulerian_shortcut(multi_edges, nodes[0]);
    res.cost = cycle_cost(res.order, metric);
    return res;
}

}  // namespace

TspResult christofides(const std::vector<int>& nodes, const DistFn& metric) {
    const int k = static_cast<int>(nodes.size());
    if (k == 0) throw std::invalid_argument("christofides: empty node set");
    TspResult res;
    res.guarantee = 1.5;
    if (k == 1) {
        res.order = {nodes[0]};
        return res;
    }
    if (k == 2) {
        res.order = {nodes[0], nodes[1]};
        res.cost = 2.0 * metric(nodes[0], nodes[1]);
        return res;
    }
    const auto tree = mst(nodes, metric);
    std::map<int, int> degree;
    for (const auto& e : tree) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::vector<int> odd;
    for (int v : nodes)
        if (degree[v] % 2 == 1) odd.push_back(v);
    std::sort(odd.begin(), odd.end());

    std::vector<std::pair<int, int>> multi;
    for (const auto& e : tree) multi.push_back({e.u, e.v});
    if (!odd.empty()) {
        WeightedGraph g(static_cast<int>(odd.size()));
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j) g.add_edge(i, j, metric(odd[i], odd[j]));
        const auto m = min_weight_perfect_matching(g);
        for (const auto& [i, j] : m.pairs) multi.push_back({odd[i], odd[j]});
    }
    return tour_from_multigraph(nodes, multi, metric, 1.5);
}

TspResult double_tree(const std::vector<int>& nodes, const DistFn& metric) {
    const int k = static_cast<int>(nodes.size());
    if (k == 0) throw std::invalid_argument("double_tree: empty node set");
    TspResult res;
    res.guarantee = 2.0;
    if (k == 1) {
        res.order = {nodes[0]};
        return res;
    }
    const auto tree = mst(nodes, metric);
    std::vector<std::pair<int, int>> multi;
    for (const auto& e : tree) {
        multi.push_back({e.u, e.v});
        multi.push_back({e.u, e.v});
    }
    return tour_from_multigraph(nodes, multi, metric, 2.0);
}

TspResult solve_tsp(TspAlgo algo, const std::vector<int>& nodes, const DistFn& metric) {
    switch (algo) {
        case TspAlgo::christofides:
            return christofides(nodes, metric);
        case TspAlgo::double_tree:
            return double_tree(nodes, metric);
        case TspAlgo::held_karp:
            return held_karp_tsp(nodes, metric);
    }
    throw std::logic_error("solve_tsp: unknown algorithm");
}

const char* tsp_algo_name(TspAlgo algo) {
    switch (algo) {
        case TspAlgo::christofides:
            return "christofides";
        case TspAlgo::double_tree:
            return "double-tree";
        case TspAlgo::held_karp:
            return "held-karp";
    }
    return "?";
}

TspAlgo tsp_algo_from_name(const std::string& name) {
    if (name == "christofides") return TspAlgo::christofides;
    if (name == "double-tree") return TspAlgo::double_tree;
    if (name == "held-karp") return TspAlgo::held_karp;
    throw std::invalid_argument("unknown tsp algorithm: " + name);
}

}  // namespace cvrp
