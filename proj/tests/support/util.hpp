#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "cvrp/graph.hpp"
#include "cvrp/instance.hpp"
#include "cvrp/io.hpp"
#include "cvrp/rng.hpp"

namespace testutil {

// Euclidean instance from explicit points; point 0 is the depot.
inline cvrp::Instance euclidean_instance(std::int64_t capacity,
                                         const std::vector<std::array<double, 2>>& points,
                                         const std::vector<std::int64_t>& demands) {
    const int dim = static_cast<int>(points.size());
    cvrp::Instance inst;
    inst.name = "test";
    inst.capacity = capacity;
    inst.demand.assign(dim, 0);
    for (int v = 1; v < dim; ++v) inst.demand[v] = demands[v - 1];
    inst.coords = points;
    inst.cost.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int u = 0; u < dim; ++u)
        for (int v = 0; v < dim; ++v) {
            const double dx = points[u][0] - points[v][0];
            const double dy = points[u][1] - points[v][1];
            inst.c(u, v) = std::sqrt(dx * dx + dy * dy);
        }
    return inst;
}

inline cvrp::Instance random_instance(std::uint64_t seed, int n, std::int64_t capacity,
                                      cvrp::DemandDist dist = cvrp::DemandDist::uniform) {
    cvrp::GeneratorConfig cfg;
    cfg.n = n;
    cfg.capacity = capacity;
    cfg.seed = seed;
    cfg.box = 100;
    cfg.dist = dist;
    return cvrp::generate_instance(cfg);
}

inline cvrp::DistFn metric_of(const cvrp::Instance& inst) {
    return [&inst](int u, int v) { return inst.c(u, v); };
}

inline std::vector<int> all_nodes(const cvrp::Instance& inst) {
    std::vector<int> nodes{0};
    for (int v = 1; v <= inst.num_clients(); ++v) nodes.push_back(v);
    return nodes;
}

}  // namespace testutil
