#pragma once

#include <utility>
#include <vector>

#include "pfsched/rational.hpp"

namespace pfsched {

enum class RowSense { LE, GE, EQ };

struct LpRow {
  std::vector<std::pair<int, Rat>> coeffs;
  RowSense sense = RowSense::LE;
  Rat rhs;
};

struct LpProblem {
  int nvars = 0;
  bool maximize = false;
  std::vector<Rat> objective;
  std::vector<LpRow> rows;

  int add_var(const Rat& cost) {
    objective.push_back(cost);
    return nvars++;
  }
  void add_row(std::vector<std::pair<int, Rat>> coeffs, RowSense sense, Rat rhs) {
    rows.push_back(LpRow{std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Duals satisfy objective == sum_i dual[i] * rhs[i] at optimality. For a
// minimization problem GE rows have dual >= 0 and LE rows dual <= 0; signs
// flip for maximization. EQ rows are unconstrained.
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Rat objective;
  std::vector<Rat> x;
  std::vector<Rat> dual;
  long pivots = 0;
};

LpSolution simplex_solve(const LpProblem& problem);

}  // namespace pfsched
