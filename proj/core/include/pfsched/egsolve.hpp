#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pfsched/model.hpp"

namespace pfsched {

// Solution of CP(J): maximize sum_j w_j log y_j over the instantaneous-rate
// polytope. Vectors are indexed like the inputs that produced them.
struct RateSolution {
  std::vector<Rat> y;
  std::vector<std::vector<Rat>> x;  // machine kinds: m x n fractional assignment
  std::vector<Rat> eta;             // packing rows, or machines
  std::vector<Rat> delta;           // machine kinds: per-job multipliers
  bool exact = false;               // all-rational solve vs frozen floating iterate
  double gap = 0.0;                 // certified optimality gap (0 when exact)
};

struct Level {
  int first = 0, last = 0;  // positions in weight-sorted order, inclusive
  Rat price;
};

struct LevelDecomposition {
  std::vector<int> order;     // sorted position -> index into the input arrays
  std::vector<Level> levels;  // prices strictly decreasing
};

RateSolution solve_eg_packing(const std::vector<std::vector<Rat>>& rows,
                              const std::vector<Rat>& w, double tol,
                              long max_iters = 1000000);

// Exact level decomposition for related machines. Speeds and weights must be
// non-increasing (ties keep input order); unsorted input is rejected.
std::pair<RateSolution, LevelDecomposition> solve_eg_related(const std::vector<Rat>& speeds,
                                                             const std::vector<Rat>& weights);

// x with y_j = sum_i s_i x_ij and substochastic rows/columns. Requires both
// sequences non-increasing, equal totals, and the prefix dominance
// sum_{j<k} y_j <= sum_{i<k} s_i; throws otherwise.
std::vector<std::vector<Rat>> level_allocation(const std::vector<Rat>& y,
                                               const std::vector<Rat>& speeds);

// Pairwise Frank-Wolfe over matchings with a Hungarian oracle. tol is the
// relative duality gap (certified by the oracle linearization).
RateSolution solve_eg_unrelated(const std::vector<std::vector<Rat>>& speed_matrix,
                                const std::vector<Rat>& w, double tol,
                                long max_iters = 500000);

// Exact multipliers for a (possibly frozen) assignment-model solution:
// minimize sum eta + sum delta s.t. eta_i + delta_j >= c_ij with
// c_ij = s_ij w_j / y_j (elementwise max with extra_lower when given),
// eta / delta pinned to zero on unsaturated machines / jobs.
std::pair<std::vector<Rat>, std::vector<Rat>> recover_multipliers_assignment(
    const std::vector<std::vector<Rat>>& speed_matrix, const std::vector<Rat>& w,
    const std::vector<Rat>& y, const std::vector<std::vector<Rat>>& x, double sat_tol,
    const std::vector<std::vector<Rat>>* extra_lower = nullptr);

struct KktReport {
  Rat stationarity;     // covering + support complementarity, scaled by w_j
  Rat complementarity;  // multiplier * slack
  Rat feasibility;      // primal constraint violation
  Rat multiplier_sum;   // |sum of multipliers - sum w| / sum w
  bool zero() const {
    return stationarity == 0 && complementarity == 0 && feasibility == 0 && multiplier_sum == 0;
  }
  double max_dbl() const;
};

// subset holds original job ids; sol vectors are full-length (zeros off-subset).
KktReport kkt_residual(const Instance&, const std::vector<int>& subset, const RateSolution& sol);

struct MonotonicityViolation {
  int job;
  int subset_a, subset_b;  // indices into the checked family, a inside b
  double rate_a, rate_b;   // rate_a < rate_b - tol
};

std::vector<MonotonicityViolation> test_monotonicity(const Instance&,
                                                     const std::vector<std::vector<int>>& subsets,
                                                     double tol);

// Packing description of the full instance: the model's own rows, or the
// polymatroid family y(S) <= cap(|S|) for uniform-speed kinds (n <= 14).
std::vector<std::vector<Rat>> packing_row_family(const Instance&);

enum class SolverChoice { Auto, Packing, Related, Unrelated };
SolverChoice solver_from_name(const std::string&);
std::string solver_name(SolverChoice);

// CP(subset) with full-length output vectors (zero rate off the subset).
// Explicit non-auto choices force a cross-solver route where compatible:
// Packing builds subset rows (or a polymatroid row family for related kinds),
// Unrelated runs Frank-Wolfe on the s_ij view.
RateSolution solve_eg_subset(const Instance&, const std::vector<int>& subset, SolverChoice choice,
                             double tol);

}  // namespace pfsched
