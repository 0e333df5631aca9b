#include "reqcut/lp_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace reqcut {

namespace {
constexpr int kBlandAfter = 50;
constexpr long kPivotCap = 200000;
}  // namespace

// Tableau layout: rows [0, m) constraints, row m the objective, row m+1 the
// auxiliary objective. Column n is the auxiliary variable, column n+1 the
// right-hand side. Nonbasic index -1 marks the auxiliary variable.
DenseSimplex::DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                           const std::vector<double>& c, double eps)
    : m_(static_cast<int>(b.size())),
      n_(static_cast<int>(c.size())),
      eps_(eps),
      basic_(m_),
      nonbasic_(n_ + 1),
      d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    if (a.size() != b.size()) throw std::invalid_argument("DenseSimplex: row count mismatch");
    for (int i = 0; i < m_; ++i) {
        if (static_cast<int>(a[i].size()) != n_) throw std::invalid_argument("DenseSimplex: column count mismatch");
        for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
        basic_[i] = n_ + i;
        d_[i][n_] = -1.0;
        d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
        nonbasic_[j] = j;
        d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
}

void DenseSimplex::pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    const std::vector<double>& row = d_[r];
    for (int i = 0; i < m_ + 2; ++i) {
        if (i == r || std::abs(d_[i][s]) <= eps_) continue;
        std::vector<double>& target = d_[i];
        const double factor = target[s] * inv;
        for (int j = 0; j < n_ + 2; ++j) target[j] -= row[j] * factor;
        target[s] = row[s] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j)
        if (j != s) d_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
        if (i != r) d_[i][s] *= -inv;
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
}

int DenseSimplex::choose_entering(int objective_row, int phase) const {
    const bool bland = degenerate_streak_ >= kBlandAfter;
    int s = -1;
    for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        const double reduced = d_[objective_row][j];
        if (bland) {
            if (reduced < -eps_ && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
        } else if (s == -1 || reduced < d_[objective_row][s] ||
                   (reduced == d_[objective_row][s] && nonbasic_[j] < nonbasic_[s])) {
            s = j;
        }
    }
    if (s != -1 && d_[objective_row][s] >= -eps_) return -1;
    return s;
}

bool DenseSimplex::run_phase(int phase) {
    const int objective_row = m_ + phase - 1;
    degenerate_streak_ = 0;
    for (long iter = 0;; ++iter) {
        if (iter > kPivotCap) throw std::runtime_error("DenseSimplex: pivot cap exceeded");
        const int s = choose_entering(objective_row, phase);
        if (s == -1) return true;
        int r = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m_; ++i) {
            if (d_[i][s] <= eps_) continue;
            const double ratio = d_[i][n_ + 1] / d_[i][s];
            if (r == -1 || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[r])) {
                r = i;
                best_ratio = ratio;
            }
        }
        if (r == -1) return false;
        degenerate_streak_ = std::abs(best_ratio) <= eps_ ? degenerate_streak_ + 1 : 0;
        pivot(r, s);
    }
}

LpSolution DenseSimplex::solve() {
    LpSolution out;
    int r = 0;
    for (int i = 1; i < m_; ++i)
        if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < -eps_) {
        pivot(r, n_);
        if (!run_phase(2) || d_[m_ + 1][n_ + 1] < -eps_) {
            out.status = LpStatus::infeasible;
            return out;
        }
        for (int i = 0; i < m_; ++i) {
            if (basic_[i] != -1) continue;
            int s = 0;
            for (int j = 1; j <= n_; ++j)
                if (d_[i][j] < d_[i][s] || (d_[i][j] == d_[i][s] && nonbasic_[j] < nonbasic_[s])) s = j;
            pivot(i, s);
        }
    }
    const bool bounded = run_phase(1);
    out.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
        if (basic_[i] >= 0 && basic_[i] < n_) out.x[basic_[i]] = d_[i][n_ + 1];
    if (!bounded) {
        out.status = LpStatus::unbounded;
        out.objective = std::numeric_limits<double>::infinity();
        return out;
    }
    out.status = LpStatus::optimal;
    out.objective = d_[m_][n_ + 1];
    return out;
}

}  // namespace reqcut
