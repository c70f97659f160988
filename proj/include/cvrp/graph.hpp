#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvrp {

using DistFn = std::function<double(int, int)>;

// Undirected graph with float weights over nodes 0..n-1. Loops are
// stored separately; a loop stands for matching a node with itself.
struct WeightedGraph {
    struct Edge {
        int u, v;
        double w;
    };

    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::optional<double>> loop;

    explicit WeightedGraph(int nodes = 0) : n(nodes), loop(nodes) {}

    // Keeps the cheaper weight if the edge already exists.
    void add_edge(int u, int v, double w);
    void set_loop(int v, double w) { loop[v] = w; }
    bool has_loops() const;
};

struct Matching {
    std::vector<std::pair<int, int>> pairs;  // u < v
    std::vector<int> loops;                  // nodes matched to themselves
    double weight = 0.0;
};

// Exact minimum-weight perfect matching (primal-dual blossom). When loop
// weights are present, a node may be covered by its loop; this is solved
// via the doubled-graph reduction. Throws std::runtime_error if no
// perfect matching exists.
Matching min_weight_perfect_matching(const WeightedGraph& g);

struct TspResult {
    std::vector<int> order;  // cyclic, starts at the first input node
    double cost = 0.0;
    double guarantee = 1.0;  // declared approximation factor
};

// Minimum spanning tree over the complete graph on `nodes` under `metric`.
// Ties broken lexicographically by (weight, u, v) on node ids.
std::vector<WeightedGraph::Edge> mst(const std::vector<int>& nodes, const DistFn& metric);

// Eulerian circuit of the multigraph (given as an edge multiset over
// arbitrary node ids) starting at `start`, with repeated nodes skipped.
// Throws std::invalid_argument if the multigraph is not Eulerian.
std::vector<int> eulerian_shortcut(const std::vector<std::pair<int, int>>& multi_edges, int start);

TspResult christofides(const std::vector<int>& nodes, const DistFn& metric);
TspResult double_tree(const std::vector<int>& nodes, const DistFn& metric);

// Exact TSP by bitmask DP; hard limit of 20 nodes.
TspResult held_karp_tsp(const std::vector<int>& nodes, const DistFn& metric);

enum class TspAlgo { christofides, double_tree, held_karp };

TspResult solve_tsp(TspAlgo algo, const std::vector<int>& nodes, const DistFn& metric);

const char* tsp_algo_name(TspAlgo algo);
TspAlgo tsp_algo_from_name(const std::string& name);

}  // namespace cvrp
