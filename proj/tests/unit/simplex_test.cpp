#include <doctest.h>

#include "pfsched/rng.hpp"
#include "pfsched/simplex.hpp"

using namespace pfsched;

TEST_CASE("one variable, one bound") {
  LpProblem lp;
  lp.maximize = true;
  int x = lp.add_var(Rat(1));
  lp.add_row({{x, Rat(1)}}, RowSense::LE, Rat(1));
  auto sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(1));
  CHECK(sol.x[x] == Rat(1));
  CHECK(sol.dual[0] == Rat(1));
}

TEST_CASE("covering minimum") {
  LpProblem lp;
  int x = lp.add_var(Rat(2));
  int y = lp.add_var(Rat(3));
  lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, RowSense::GE, Rat(2));
  auto sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(4));
  CHECK(sol.x[x] == Rat(2));
  CHECK(sol.x[y] == Rat(0));
  CHECK(sol.dual[0] == Rat(2));
}

TEST_CASE("equality rows bind both ways") {
  LpProblem lp;
  int x = lp.add_var(Rat(1));
  int y = lp.add_var(Rat(1));
  lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(3));
  lp.add_row({{x, Rat(1)}}, RowSense::LE, Rat(1));
  auto sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(3));
  CHECK(sol.x[x] + sol.x[y] == Rat(3));
}

TEST_CASE("infeasible and unbounded are reported") {
  LpProblem bad;
  int x = bad.add_var(Rat(1));
  bad.add_row({{x, Rat(1)}}, RowSense::LE, Rat(-1));
  CHECK(simplex_solve(bad).status == LpStatus::Infeasible);

  LpProblem loose;
  loose.maximize = true;
  loose.add_var(Rat(1));
  CHECK(simplex_solve(loose).status == LpStatus::Unbounded);

  LpProblem conflict;
  int z = conflict.add_var(Rat(1));
  conflict.add_row({{z, Rat(1)}}, RowSense::GE, Rat(2));
  conflict.add_row({{z, Rat(1)}}, RowSense::LE, Rat(1));
  CHECK(simplex_solve(conflict).status == LpStatus::Infeasible);
}

TEST_CASE("degenerate vertices do not cycle") {
  // Many redundant rows through the same optimum.
  LpProblem lp;
  lp.maximize = true;
  int x = lp.add_var(Rat(3));
  int y = lp.add_var(Rat(1));
  lp.add_row({{x, Rat(1)}}, RowSense::LE, Rat(1));
  lp.add_row({{x, Rat(1)}, {y, Rat(1)}}, RowSense::LE, Rat(1));
  lp.add_row({{x, Rat(2)}, {y, Rat(1)}}, RowSense::LE, Rat(2));
  lp.add_row({{x, Rat(1)}, {y, Rat(2)}}, RowSense::LE, Rat(1));
  auto sol = simplex_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(3));
  CHECK(sol.x[x] == Rat(1));
  CHECK(sol.x[y] == Rat(0));
}

TEST_CASE("duals price the right-hand sides") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    LpProblem lp;
    const int nv = 1 + static_cast<int>(rng.below(4));
    const int nr = 1 + static_cast<int>(rng.below(4));
    for (int v = 0; v < nv; ++v) lp.add_var(Rat(static_cast<long>(1 + rng.below(5))));
    for (int r = 0; r < nr; ++r) {
      std::vector<std::pair<int, Rat>> coeffs;
      for (int v = 0; v < nv; ++v) {
        long c = static_cast<long>(rng.below(3));
        if (c) coeffs.emplace_back(v, Rat(c));
      }
      if (coeffs.empty()) coeffs.emplace_back(static_cast<int>(rng.below(nv)), Rat(1));
      lp.add_row(std::move(coeffs), RowSense::GE, Rat(static_cast<long>(1 + rng.below(6))));
    }
    auto sol = simplex_solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);  // covering LPs with positive costs
    Rat priced = 0;
    for (size_t r = 0; r < lp.rows.size(); ++r) {
      CHECK(sol.dual[r] >= 0);  // GE rows in a minimization
      priced += sol.dual[r] * lp.rows[r].rhs;
    }
    CHECK(priced == sol.objective);
    for (size_t r = 0; r < lp.rows.size(); ++r) {
      Rat lhs = 0;
      for (const auto& [v, c] : lp.rows[r].coeffs) lhs += c * sol.x[v];
      CHECK(lhs >= lp.rows[r].rhs);
    }
  }
}
