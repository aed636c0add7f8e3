#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "pfsched/egsolve.hpp"
#include "pfsched/matching.hpp"
#include "pfsched/simplex.hpp"

namespace pfsched {
namespace {

using Edges = std::vector<std::pair<int, int>>;  // (machine, job) pairs, kept sorted

}  // namespace

RateSolution solve_eg_unrelated(const std::vector<std::vector<Rat>>& speed_matrix,
                                const std::vector<Rat>& w, double tol, long max_iters) {
  const int m = static_cast<int>(speed_matrix.size());
  const int n = static_cast<int>(w.size());
  if (m == 0 || n == 0) throw SolverError("empty assignment model");
  std::vector<std::vector<double>> s(m, std::vector<double>(n));
  std::vector<double> wd(n);
  double wsum = 0.0;
  for (int j = 0; j < n; ++j) {
    wd[j] = rat_dbl(w[j]);
    if (wd[j] <= 0) throw SolverError("weights must be positive");
    wsum += wd[j];
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      s[i][j] = rat_dbl(speed_matrix[i][j]);
      if (s[i][j] < 0) throw SolverError("speeds must be nonnegative");
    }

  // Start from a union of matchings that together give every job a positive
  // rate: each round seeds on a still-uncovered job's fastest machine, then
  // fills greedily.
  std::vector<Edges> atoms;
  std::vector<double> weight;  // convex combination over atoms
  {
    std::vector<char> covered(n, 0);
    for (int round = 0; round < n; ++round) {
      int seed = -1;
      for (int j = 0; j < n; ++j)
        if (!covered[j]) seed = j;
      if (seed < 0) break;
      Edges e;
      std::vector<char> machineUsed(m, 0), jobUsed(n, 0);
      for (int pass = 0; pass < 2; ++pass) {
        for (int jj = 0; jj < n; ++jj) {
          const int j = (seed + jj) % n;
          if (jobUsed[j]) continue;
          if (pass == 0 && covered[j]) continue;
          int best = -1;
          for (int i = 0; i < m; ++i)
            if (!machineUsed[i] && s[i][j] > 0 && (best < 0 || s[i][j] > s[best][j])) best = i;
          if (best < 0) continue;
          e.emplace_back(best, j);
          machineUsed[best] = 1;
          jobUsed[j] = 1;
          covered[j] = 1;
        }
      }
      if (e.empty()) break;
      std::sort(e.begin(), e.end());
      atoms.push_back(std::move(e));
    }
    for (int j = 0; j < n; ++j)
      if (!covered[j]) throw SolverError("job has zero speed on every machine");
    weight.assign(atoms.size(), 1.0 / atoms.size());
  }

  std::vector<std::vector<double>> x(m, std::vector<double>(n, 0.0));
  std::vector<double> y(n, 0.0);
  const auto rebuild = [&]() {
    for (auto& row : x) std::fill(row.begin(), row.end(), 0.0);
    std::fill(y.begin(), y.end(), 0.0);
    for (size_t a = 0; a < atoms.size(); ++a)
      for (const auto& [i, j] : atoms[a]) {
        x[i][j] += weight[a];
        y[j] += weight[a] * s[i][j];
      }
  };
  rebuild();

  // Pairwise Frank-Wolfe: toward the Hungarian argmax of <grad, x>, away from
  // the worst active atom. <grad, x> = sum w at any strictly positive y, so
  // the oracle value certifies the duality gap directly.
  const double floor_gap = 1e-12 * std::max(1.0, wsum);
  const double target = std::max(tol * std::max(1.0, wsum), floor_gap);
  std::vector<std::vector<double>> g(m, std::vector<double>(n));
  double gap = std::numeric_limits<double>::infinity();
  for (long it = 0; it < max_iters; ++it) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = s[i][j] > 0 ? wd[j] * s[i][j] / y[j] : 0.0;
    const std::vector<int> match = max_weight_matching(g);
    Edges toward;
    double oracle = 0.0;
    for (int i = 0; i < m; ++i)
      if (match[i] >= 0 && s[i][match[i]] > 0) {
        toward.emplace_back(i, match[i]);
        oracle += g[i][match[i]];
      }
    std::sort(toward.begin(), toward.end());
    gap = oracle - wsum;
    if (gap <= target) break;

    size_t away = 0;
    double awayVal = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < atoms.size(); ++a) {
      double v = 0.0;
      for (const auto& [i, j] : atoms[a]) v += g[i][j];
      if (v < awayVal) {
        awayVal = v;
        away = a;
      }
    }

    std::vector<double> dy(n, 0.0);
    for (const auto& [i, j] : toward) dy[j] += s[i][j];
    for (const auto& [i, j] : atoms[away]) dy[j] -= s[i][j];
    const double gmax = weight[away];

    // phi(t) = sum w_j log(y_j + t dy_j) is concave; bisect on phi'.
    const auto slope = [&](double t) {
      double v = 0.0;
      for (int j = 0; j < n; ++j)
        if (dy[j] != 0.0) v += wd[j] * dy[j] / (y[j] + t * dy[j]);
      return v;
    };
    double t = gmax;
    if (slope(gmax) < 0) {
      double lo = 0.0, hi = gmax;
      for (int b = 0; b < 80; ++b) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0 ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    if (t <= 0) break;  // no progress possible along this direction

    weight[away] -= t;
    bool found = false;
    for (size_t a = 0; a < atoms.size() && !found; ++a)
      if (atoms[a] == toward) {
        weight[a] += t;
        found = true;
      }
    if (!found) {
      atoms.push_back(std::move(toward));
      weight.push_back(t);
    }
    if (weight[away] <= 1e-15) {
      atoms.erase(atoms.begin() + away);
      weight.erase(weight.begin() + away);
    }
    rebuild();
  }
  if (gap > target) throw SolverError("assignment solver hit the iteration cap");

  RateSolution sol;
  sol.exact = false;
  sol.gap = gap / std::max(1.0, wsum);
  sol.x.assign(m, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) sol.x[i][j] = rat_exact(x[i][j]);
  // Rates derive from the frozen allocation so y = s x holds exactly.
  sol.y.assign(n, Rat(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) sol.y[j] += speed_matrix[i][j] * sol.x[i][j];
  return sol;
}

std::pair<std::vector<Rat>, std::vector<Rat>> recover_multipliers_assignment(
    const std::vector<std::vector<Rat>>& speed_matrix, const std::vector<Rat>& w,
    const std::vector<Rat>& y, const std::vector<std::vector<Rat>>& x, double sat_tol,
    const std::vector<std::vector<Rat>>* extra_lower) {
  const int m = static_cast<int>(speed_matrix.size());
  const int n = static_cast<int>(w.size());
  const Rat slack = rat_exact(sat_tol);

  // A multiplier may be positive only on a saturated row/column; fixing the
  // rest to zero keeps complementary slackness while the covering rows force
  // eta_i + delta_j >= c_ij exactly.
  std::vector<int> etaVar(m, -1), deltaVar(n, -1);
  LpProblem lp;
  lp.maximize = false;
  for (int i = 0; i < m; ++i) {
    Rat load = 0;
    for (int j = 0; j < n; ++j) load += x[i][j];
    if (load >= 1 - slack) etaVar[i] = lp.add_var(Rat(1));
  }
  for (int j = 0; j < n; ++j) {
    Rat use = 0;
    for (int i = 0; i < m; ++i) use += x[i][j];
    if (use >= 1 - slack) deltaVar[j] = lp.add_var(Rat(1));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      if (speed_matrix[i][j] == 0) continue;
      if (y[j] <= 0) throw SolverError("zero rate on a reachable job");
      Rat c = speed_matrix[i][j] * w[j] / y[j];
      if (extra_lower) c = rat_max(c, (*extra_lower)[i][j]);
      if (c <= 0) continue;
      std::vector<std::pair<int, Rat>> coeffs;
      if (etaVar[i] >= 0) coeffs.emplace_back(etaVar[i], Rat(1));
      if (deltaVar[j] >= 0) coeffs.emplace_back(deltaVar[j], Rat(1));
      if (coeffs.empty()) throw SolverError("uncoverable multiplier constraint");
      lp.add_row(coeffs, RowSense::GE, c);
    }

  const LpSolution ls = simplex_solve(lp);
  if (ls.status != LpStatus::Optimal) throw SolverError("multiplier recovery failed");
  std::vector<Rat> eta(m, Rat(0)), delta(n, Rat(0));
  for (int i = 0; i < m; ++i)
    if (etaVar[i] >= 0) eta[i] = ls.x[etaVar[i]];
  for (int j = 0; j < n; ++j)
    if (deltaVar[j] >= 0) delta[j] = ls.x[deltaVar[j]];
  return {eta, delta};
}

}  // namespace pfsched
