#pragma once

#include <vector>

namespace reqcut {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase tableau simplex for
///     maximize c.x  subject to  A x <= b,  x >= 0.
/// Rows with negative b are handled by an auxiliary phase. Pricing is
/// Dantzig's rule, switching to Bland's rule after a run of degenerate pivots
/// so the method always terminates.
class DenseSimplex {
public:
    DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b, const std::vector<double>& c,
                 double eps = 1e-9);

    LpSolution solve();

private:
    void pivot(int r, int s);
    bool run_phase(int phase);
    int choose_entering(int objective_row, int phase) const;

    int m_;
    int n_;
    double eps_;
    std::vector<int> basic_;
    std::vector<int> nonbasic_;
    std::vector<std::vector<double>> d_;
    int degenerate_streak_ = 0;
};

}  // namespace reqcut
