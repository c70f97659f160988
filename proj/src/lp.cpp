#include "cvrp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cvrp {

namespace {

constexpr double kPivotTol = 1e-9;

class Tableau {
public:
    Tableau(const CoveringLp& lp)
        : m_(lp.rows),
          n_struct_(static_cast<int>(lp.columns.size())),
          total_(n_struct_ + 2 * m_),
          tab_(m_, std::vector<double>(total_ + 1, 0.0)),
          z_(total_ + 1, 0.0),
          basis_(m_) {
        // Layout: [structural | surplus | artificial | rhs]. Constraints
        // enter as  A x - s + a = 1  with the artificials basic.
        for (int j = 0; j < n_struct_; ++j)
            for (int row : lp.columns[j]) tab_[row][j] = 1.0;
        for (int i = 0; i < m_; ++i) {
            tab_[i][n_struct_ + i] = -1.0;
            tab_[i][n_struct_ + m_ + i] = 1.0;
            tab_[i][total_] = 1.0;
            basis_[i] = n_struct_ + m_ + i;
        }
    }

    int surplus_col(int row) const { return n_struct_ + row; }
    int artificial_col(int row) const { return n_struct_ + m_ + row; }

    void load_costs(const std::vector<double>& c) {
        for (int j = 0; j <= total_; ++j) {
            double v = j < total_ ? c[j] : 0.0;
            for (int i = 0; i < m_; ++i) v -= c[basis_[i]] * tab_[i][j];
            z_[j] = v;
        }
    }

    // Bland's rule: entering = lowest eligible index, leaving = lowest
    // basic index among the ratio-test minima.
    bool iterate(const std::vector<char>& banned, int max_iters, int& iters) {
        for (;;) {
            int entering = -1;
            for (int j = 0; j < total_; ++j)
                if (!banned[j] && z_[j] < -kPivotTol) {
                    entering = j;
                    break;
                }
            if (entering < 0) return true;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i)
                if (tab_[i][entering] > kPivotTol)
                    best_ratio = std::min(best_ratio, tab_[i][total_] / tab_[i][entering]);
            if (best_ratio == std::numeric_limits<double>::infinity())
                throw std::runtime_error("simplex: unbounded direction");
            int leave = -1;
            const double cut = best_ratio + kPivotTol * (1.0 + std::abs(best_ratio));
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][entering] <= kPivotTol) continue;
                if (tab_[i][total_] / tab_[i][entering] > cut) continue;
                if (leave < 0 || basis_[i] < basis_[leave]) leave = i;
            }
            pivot(leave, entering);
            if (++iters > max_iters) return false;
        }
    }

    void pivot(int row, int col) {
        const double p = tab_[row][col];
        for (int j = 0; j <= total_; ++j) tab_[row][j] /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j <= total_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        const double fz = z_[col];
        if (fz != 0.0)
            for (int j = 0; j <= total_; ++j) z_[j] -= fz * tab_[row][j];
        basis_[row] = col;
    }

    int m_, n_struct_, total_;
    std::vector<std::vector<double>> tab_;
    std::vector<double> z_;
    std::vector<int> basis_;
};

}  // namespace

LpResult solve_covering_lp(const CoveringLp& lp) {
    LpResult result;
    result.duals.assign(lp.rows, 0.0);
    result.x.assign(lp.columns.size(), 0.0);
    if (lp.rows == 0) return result;
    if (lp.columns.empty()) throw std::runtime_error("simplex: no columns but rows present");

    Tableau t(lp);
    const int max_iters = 2000 + 200 * (t.total_ + t.m_);
    int iters = 0;

    // Phase 1: minimize the artificial sum.
    std::vector<double> phase1_cost(t.total_, 0.0);
    for (int i = 0; i < t.m_; ++i) phase1_cost[t.artificial_col(i)] = 1.0;
    t.load_costs(phase1_cost);
    std::vector<char> banned(t.total_, 0);
    if (!t.iterate(banned, max_iters, iters))
        throw std::runtime_error("simplex: cycling guard tripped in phase 1");
    double art_sum = 0.0;
    for (int i = 0; i < t.m_; ++i)
        if (t.basis_[i] >= t.artificial_col(0)) art_sum += t.tab_[i][t.total_];
    if (art_sum > 1e-7) throw std::runtime_error("simplex: phase 1 failed to reach feasibility");

    // Drive artificials out of the basis where a real pivot exists.
    for (int i = 0; i < t.m_; ++i) {
        if (t.basis_[i] < t.artificial_col(0)) continue;
        for (int j = 0; j < t.artificial_col(0); ++j)
            if (std::abs(t.tab_[i][j]) > kPivotTol) {
                t.pivot(i, j);
                break;
            }
    }

    // Phase 2 with the real costs; artificials may not re-enter.
    std::vector<double> phase2_cost(t.total_, 0.0);
    for (std::size_t j = 0; j < lp.columns.size(); ++j) phase2_cost[j] = lp.costs[j];
    t.load_costs(phase2_cost);
    for (int i = 0; i < t.m_; ++i) banned[t.artificial_col(i)] = 1;
    if (!t.iterate(banned, max_iters, iters))
        throw std::runtime_error("simplex: cycling guard tripped in phase 2");

    for (int i = 0; i < t.m_; ++i)
        if (t.basis_[i] < static_cast<int>(lp.columns.size()))
            result.x[t.basis_[i]] = t.tab_[i][t.total_];
    for (std::size_t j = 0; j < lp.columns.size(); ++j)
        result.objective += lp.costs[j] * result.x[j];
    // The artificial block of the final tableau is B^{-1}, so the reduced
    // cost there is exactly -y.
    for (int i = 0; i < t.m_; ++i) result.duals[i] = -t.z_[t.artificial_col(i)];
    result.iterations = iters;
    return result;
}

}  // namespace cvrp
