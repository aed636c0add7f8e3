#include "pfsched/simplex.hpp"

#include <algorithm>

namespace pfsched {

namespace {

// Dense two-phase tableau. Dantzig pricing until a degenerate streak, then
// Bland permanently; that keeps the anti-cycling guarantee without paying
// Bland's pivot counts on every instance.
class Tableau {
 public:
  explicit Tableau(const LpProblem& p) : np_(p.nvars), m_(static_cast<int>(p.rows.size())) {
    sense_.resize(m_);
    flip_.resize(m_);
    artificial_.assign(m_, -1);
    dual_col_.assign(m_, -1);
    std::vector<int> slack_col(m_, -1);
    ncols_ = np_;
    for (int r = 0; r < m_; ++r) {
      bool flip = p.rows[r].rhs < 0;
      RowSense s = p.rows[r].sense;
      if (flip)
        s = s == RowSense::LE ? RowSense::GE : s == RowSense::GE ? RowSense::LE : RowSense::EQ;
      sense_[r] = s;
      flip_[r] = flip;
      if (s != RowSense::EQ) slack_col[r] = ncols_++;
      if (s != RowSense::LE) artificial_[r] = ncols_++;
    }
    tab_.assign(m_, std::vector<Rat>(ncols_ + 1, Rat(0)));
    basis_.assign(m_, -1);
    banned_.assign(ncols_, false);
    for (int r = 0; r < m_; ++r) {
      const auto& row = p.rows[r];
      Rat sign = flip_[r] ? Rat(-1) : Rat(1);
      for (const auto& [v, c] : row.coeffs) tab_[r][v] += sign * c;
      tab_[r][ncols_] = sign * row.rhs;
      if (slack_col[r] >= 0) tab_[r][slack_col[r]] = sense_[r] == RowSense::LE ? 1 : -1;
      if (artificial_[r] >= 0) {
        tab_[r][artificial_[r]] = 1;
        banned_[artificial_[r]] = true;
        basis_[r] = artificial_[r];
      } else {
        basis_[r] = slack_col[r];
      }
      // The identity column whose final reduced cost encodes this row's dual.
      dual_col_[r] = sense_[r] == RowSense::LE ? slack_col[r] : artificial_[r];
    }
  }

  // Returns false when no finite optimum exists for this phase.
  bool run(const std::vector<Rat>& cost, bool phase1, long& pivots) {
    std::vector<Rat> z(ncols_, Rat(0));
    Rat zval = 0;
    for (int j = 0; j < ncols_ && j < static_cast<int>(cost.size()); ++j) z[j] = cost[j];
    for (int r = 0; r < m_; ++r) {
      Rat cb = basis_[r] < static_cast<int>(cost.size()) ? cost[basis_[r]] : Rat(0);
      if (cb == 0) continue;
      for (int j = 0; j < ncols_; ++j)
        if (tab_[r][j] != 0) z[j] -= cb * tab_[r][j];
      zval += cb * tab_[r][ncols_];
    }
    int degenerate_streak = 0;
    bool bland = false;
    for (;;) {
      int enter = -1;
      if (!bland) {
        Rat best = 0;
        for (int j = 0; j < ncols_; ++j) {
          if (!phase1 && banned_[j]) continue;
          if (z[j] < best) {
            best = z[j];
            enter = j;
          }
        }
      } else {
        for (int j = 0; j < ncols_; ++j) {
          if (!phase1 && banned_[j]) continue;
          if (z[j] < 0) {
            enter = j;
            break;
          }
        }
      }
      if (enter < 0) {
        objective_ = zval;
        z_final_ = std::move(z);
        return true;
      }
      int leave = -1;
      Rat best_ratio;
      for (int r = 0; r < m_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rat ratio = tab_[r][ncols_] / tab_[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      degenerate_streak = tab_[leave][ncols_] == 0 ? degenerate_streak + 1 : 0;
      if (degenerate_streak > 40) bland = true;
      pivot(leave, enter, z, zval);
      ++pivots;
    }
  }

  void pivot(int r, int c, std::vector<Rat>& z, Rat& zval) {
    Rat piv = tab_[r][c];
    if (piv != 1)
      for (int j = 0; j <= ncols_; ++j)
        if (tab_[r][j] != 0) tab_[r][j] /= piv;
    for (int rr = 0; rr < m_; ++rr) {
      if (rr == r || tab_[rr][c] == 0) continue;
      Rat f = tab_[rr][c];
      for (int j = 0; j <= ncols_; ++j)
        if (tab_[r][j] != 0) tab_[rr][j] -= f * tab_[r][j];
    }
    if (z[c] != 0) {
      Rat f = z[c];
      for (int j = 0; j < ncols_; ++j)
        if (tab_[r][j] != 0) z[j] -= f * tab_[r][j];
      zval += f * tab_[r][ncols_];
    }
    basis_[r] = c;
  }

  void expel_artificials(long& pivots) {
    std::vector<Rat> dummy(ncols_, Rat(0));
    Rat dz = 0;
    for (int r = 0; r < m_; ++r) {
      if (artificial_[r] < 0 || basis_[r] != artificial_[r]) continue;
      for (int j = 0; j < ncols_; ++j) {
        if (banned_[j] || tab_[r][j] == 0) continue;
        pivot(r, j, dummy, dz);
        ++pivots;
        break;
      }
      // A row whose artificial cannot leave is redundant; it stays at zero.
    }
  }

  int np_, m_, ncols_ = 0;
  std::vector<std::vector<Rat>> tab_;
  std::vector<int> basis_;
  std::vector<bool> banned_;
  std::vector<int> dual_col_;
  std::vector<int> artificial_;
  std::vector<RowSense> sense_;
  std::vector<bool> flip_;
  Rat objective_;
  std::vector<Rat> z_final_;
};

}  // namespace

LpSolution simplex_solve(const LpProblem& problem) {
  LpSolution sol;
  const int m = static_cast<int>(problem.rows.size());
  for (const auto& row : problem.rows)
    for (const auto& [v, c] : row.coeffs)
      if (v < 0 || v >= problem.nvars) throw SolverError("lp row references unknown variable");

  Tableau t(problem);
  std::vector<Rat> phase1_cost(t.ncols_, Rat(0));
  bool need_phase1 = false;
  for (int r = 0; r < m; ++r)
    if (t.artificial_[r] >= 0) {
      phase1_cost[t.artificial_[r]] = 1;
      need_phase1 = true;
    }
  if (need_phase1) {
    if (!t.run(phase1_cost, true, sol.pivots)) throw SolverError("simplex phase 1 unbounded");
    if (t.objective_ != 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    t.expel_artificials(sol.pivots);
  }

  std::vector<Rat> cost(problem.nvars);
  for (int j = 0; j < problem.nvars; ++j)
    cost[j] = problem.maximize ? Rat(-problem.objective[j]) : problem.objective[j];
  if (!t.run(cost, false, sol.pivots)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.x.assign(problem.nvars, Rat(0));
  for (int r = 0; r < m; ++r)
    if (t.basis_[r] < problem.nvars) sol.x[t.basis_[r]] = t.tab_[r][t.ncols_];
  sol.objective = problem.maximize ? Rat(-t.objective_) : t.objective_;
  sol.dual.assign(m, Rat(0));
  for (int r = 0; r < m; ++r) {
    if (t.dual_col_[r] < 0) continue;
    Rat y = -t.z_final_[t.dual_col_[r]];
    if (problem.maximize) y = -y;
    if (t.flip_[r]) y = -y;
    sol.dual[r] = y;
  }
  return sol;
}

}  // namespace pfsched
