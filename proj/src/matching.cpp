#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cvrp/graph.hpp"

namespace cvrp {

void WeightedGraph::add_edge(int u, int v, double w) {
    if (u == v) throw std::invalid_argument("add_edge: use set_loop for loops");
    for (auto& e : edges)
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
            e.w = std::min(e.w, w);
            return;
        }
    edges.push_back({std::min(u, v), std::max(u, v), w});
}

bool WeightedGraph::has_loops() const {
    for (const auto& l : loop)
        if (l.has_value()) return true;
    return false;
}

namespace {

// Maximum-weight matching on a general graph, the O(n^3) primal-dual
// blossom algorithm. Vertices are 1..n; w[u][v] > 0 marks an edge.
// All arithmetic is integral, so answers are exact.
class BlossomMatcher {
public:
    explicit BlossomMatcher(int n)
        : n_(n),
          cap_(2 * n + 1),
          g_(cap_, std::vector<Arc>(cap_)),
          lab_(cap_, 0),
          match_(cap_, 0),
          slack_(cap_, 0),
          st_(cap_, 0),
          pa_(cap_, 0),
          s_(cap_, -1),
          vis_(cap_, 0),
          flower_(cap_),
          flower_from_(cap_, std::vector<int>(n + 1, 0)) {
        for (int u = 0; u < cap_; ++u)
            for (int v = 0; v < cap_; ++v) g_[u][v] = Arc{u, v, 0};
    }

    void set_weight(int u, int v, long long w) {  // 1-based, w > 0
        g_[u][v].w = g_[v][u].w = w;
    }

    // Returns the mate of every vertex (1-based; 0 = unmatched).
    std::vector<int> solve() {
        n_x_ = n_;
        for (int u = 0; u <= n_; ++u) st_[u] = u;
        long long w_max = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) {
                flower_from_[u][v] = (u == v ? u : 0);
                w_max = std::max(w_max, g_[u][v].w);
            }
        for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
        while (grow_phase()) {
        }
        return match_;
    }

private:
    struct Arc {
        int u, v;
        long long w;
    };

    long long delta(const Arc& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || delta(g_[u][x]) < delta(g_[slack_[x]][x])) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }

    void queue_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int child : flower_[x]) queue_push(child);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int child : flower_[x]) set_st(child, b);
    }

    int get_pr(int b, int xr) {
        auto it = std::find(flower_[b].begin(), flower_[b].end(), xr);
        int pr = static_cast<int>(it - flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) return;
        const Arc e = g_[u][v];
        const int xr = flower_from_[u][e.u];
        const int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timestamp_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis_[u] == timestamp_) return u;
            vis_[u] = timestamp_;
            u = st_[match_[u]];
            if (u) u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) ++b;
        if (b > n_x_) ++n_x_;
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            queue_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            queue_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
        for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; ++x)
                if (g_[xs][x].w > 0 && (g_[b][x].w == 0 || delta(g_[xs][x]) < delta(g_[b][x]))) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from_[xs][x]) flower_from_[b][x] = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {  // s_[b] == 1 and lab_[b] == 0
        for (int child : flower_[b]) set_st(child, child);
        const int xr = flower_from_[b][g_[b][pa_[b]].u];
        const int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower_[b][i];
            const int xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            queue_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
            const int xs = flower_[b][i];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_tight_edge(const Arc& e) {
        const int u = st_[e.u];
        const int v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            const int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            s_[nu] = 0;
            queue_push(nu);
        } else if (s_[v] == 0) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool grow_phase() {
        std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                s_[x] = 0;
                queue_push(x);
            }
        if (q_.empty()) return false;
        for (;;) {
            while (!q_.empty()) {
                const int u = q_.front();
                q_.pop_front();
                if (s_[st_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v)
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (delta(g_[u][v]) == 0) {
                            if (on_tight_edge(g_[u][v])) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
            }
            long long d = std::numeric_limits<long long>::max();
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x]) {
                    if (s_[x] == -1)
                        d = std::min(d, delta(g_[slack_[x]][x]));
                    else if (s_[x] == 0)
                        d = std::min(d, delta(g_[slack_[x]][x]) / 2);
                }
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d) return false;
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b) {
                    if (s_[b] == 0)
                        lab_[b] += d * 2;
                    else if (s_[b] == 1)
                        lab_[b] -= d * 2;
                }
            q_.clear();
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    delta(g_[slack_[x]][x]) == 0)
                    if (on_tight_edge(g_[slack_[x]][x])) return true;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
        }
    }

    int n_;
    int cap_;
    int n_x_ = 0;
    int timestamp_ = 0;
    std::vector<std::vector<Arc>> g_;
    std::vector<long long> lab_;
    std::vector<int> match_, slack_, st_, pa_;
    std::vector<int> s_;  // 0 outer, 1 inner, -1 unlabeled
    std::vector<int> vis_;
    std::vector<std::vector<int>> flower_;       // blossom children, cyclic order
    std::vector<std::vector<int>> flower_from_;  // blossom id x original vertex -> child
    std::deque<int> q_;
};

struct ScaledEdge {
    int u, v;
    long long w;
};

// Minimum-weight perfect matching on integer weights: run max-weight
// matching on K - w with K large enough that maximum weight implies
// maximum cardinality. Returns mate[] (0-based, -1 unmatched).
std::vector<int> min_perfect_int(int n, const std::vector<ScaledEdge>& edges) {
    if (n == 0) return {};
    long long max_w = 0;
    for (const auto& e : edges) max_w = std::max(max_w, e.w);
    const long long big = max_w * (n / 2 + 1) + 1;
    BlossomMatcher matcher(n);
    for (const auto& e : edges) matcher.set_weight(e.u + 1, e.v + 1, big - e.w);
    const auto mate = matcher.solve();
    std::vector<int> result(n, -1);
    for (int u = 1; u <= n; ++u)
        if (mate[u] != 0) result[u - 1] = mate[u] - 1;
    return result;
}

long long pick_scale(double max_w, int n) {
    // Keep (scaled_max + 1) * (n/2 + 2) * 4 well below 2^62.
    double scale = 0x1.0p40;
    const double budget = 0x1.0p58 / (static_cast<double>(n) + 4.0);
    while (scale > 1.0 && (max_w + 1.0) * scale > budget) scale *= 0.5;
    return static_cast<long long>(scale);
}

}  // namespace

Matching min_weight_perfect_matching(const WeightedGraph& g) {
    Matching result;
    if (g.n == 0) return result;

    const bool loops = g.has_loops();
    const int total = loops ? 2 * g.n : g.n;

    double max_w = 0.0;
    for (const auto& e : g.edges) max_w = std::max(max_w, std::abs(e.w));
    for (const auto& l : g.loop)
        if (l) max_w = std::max(max_w, 2.0 * std::abs(*l));
    const long long scale = pick_scale(max_w, total);
    const auto scaled = [&](double w) { return std::llround(w * static_cast<double>(scale)); };

    std::vector<ScaledEdge> edges;
    for (const auto& e : g.edges) {
        if (e.w < 0.0 || !std::isfinite(e.w)) throw std::invalid_argument("matching: bad edge weight");
        edges.push_back({e.u, e.v, scaled(e.w)});
        if (loops) edges.push_back({e.u + g.n, e.v + g.n, scaled(e.w)});
    }
    if (loops) {
        // Doubled-graph reduction: the node-to-mirror edge carries twice
        // the loop weight so a lifted loop-matching has exactly twice its
        // weight; the original-side projection of the optimum is optimal.
        for (int v = 0; v < g.n; ++v)
            if (g.loop[v]) edges.push_back({v, v + g.n, scaled(2.0 * *g.loop[v])});
    }

    const auto mate = min_perfect_int(total, edges);
    for (int v = 0; v < total; ++v)
        if (mate[v] < 0)
            throw std::runtime_error("min_weight_perfect_matching: no perfect matching exists");

    for (int u = 0; u < g.n; ++u) {
        if (loops && mate[u] == u + g.n) {
            result.loops.push_back(u);
            result.weight += *g.loop[u];
        } else if (mate[u] < g.n && u < mate[u]) {
            result.pairs.emplace_back(u, mate[u]);
            for (const auto& e : g.edges)
                if ((e.u == u && e.v == mate[u]) || (e.u == mate[u] && e.v == u)) {
                    result.weight += e.w;
                    break;
                }
        }
    }
    return result;
}

}  // namespace cvrp
