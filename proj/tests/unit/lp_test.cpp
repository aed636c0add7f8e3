#include <doctest.h>

#include "pfsched/baselines.hpp"
#include "pfsched/lp.hpp"
#include "pfsched/rng.hpp"

using namespace pfsched;

namespace {

Instance single(std::vector<Rat> p, std::vector<Rat> w, std::vector<Rat> r) {
  Instance inst;
  inst.model.kind = ModelKind::Single;
  for (size_t j = 0; j < p.size(); ++j) inst.jobs.push_back({p[j], w[j], r[j]});
  return inst;
}

Rat lp_value(const Instance& inst, const Rat& kappa) {
  auto lp = build_time_indexed(inst, kappa);
  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);
  return time_indexed_original_value(lp, sol.objective);
}

}  // namespace

TEST_CASE("time grid prices the midpoints") {
  auto one = single({Rat(2)}, {Rat(1)}, {Rat(0)});
  CHECK(lp_value(one, Rat(1)) == Rat(1));
  CHECK(lp_value(one, Rat(2)) == Rat(2));  // half capacity doubles the span
}

TEST_CASE("fractional data lands on a scaled grid") {
  auto inst = single({make_rat(3, 2)}, {Rat(1)}, {make_rat(1, 2)});
  auto lp = build_time_indexed(inst, Rat(1));
  CHECK(lp.scale == 2);
  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(time_indexed_original_value(lp, sol.objective) == make_rat(5, 4));
}

TEST_CASE("pair on one machine") {
  auto duo = single({Rat(1), Rat(1)}, {Rat(1), Rat(1)}, {Rat(0), Rat(0)});
  CHECK(lp_value(duo, Rat(1)) == Rat(2));
}

TEST_CASE("machine kinds use assignment variables") {
  Instance inst;
  inst.model.kind = ModelKind::Related;
  inst.model.m = 2;
  inst.model.speeds = {Rat(2), Rat(1)};
  inst.jobs.push_back({Rat(2), Rat(1), Rat(0)});
  inst.jobs.push_back({Rat(2), Rat(1), Rat(0)});
  auto lp = build_time_indexed(inst, Rat(1));
  CHECK(lp.assignment_form);
  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);
  Rat v = time_indexed_original_value(lp, sol.objective);
  CHECK(v > 0);
  CHECK(v <= opt0_related(inst.model.speeds, {Rat(2), Rat(2)}));
}

TEST_CASE("tighter capacity never cheapens the relaxation") {
  auto inst = single({Rat(1), Rat(2)}, {Rat(2), Rat(1)}, {Rat(0), Rat(1)});
  Rat v1 = lp_value(inst, Rat(1));
  Rat v2 = lp_value(inst, Rat(2));
  Rat v3 = lp_value(inst, Rat(3));
  CHECK(v1 <= v2);
  CHECK(v2 <= v3);
}

TEST_CASE("releases delay eligibility") {
  auto inst = single({Rat(1)}, {Rat(1)}, {Rat(3)});
  auto lp = build_time_indexed(inst, Rat(1));
  CHECK(lp.release_cell[0] == 3);
  CHECK(lp_value(inst, Rat(1)) == make_rat(7, 2));  // cell [3,4) midpoint
}

TEST_CASE("interval grid is geometric") {
  auto inst = single({Rat(1)}, {Rat(1)}, {Rat(0)});
  auto lp = build_interval_indexed(inst, make_rat(1, 2), make_rat(1, 2));
  REQUIRE(lp.boundaries.size() == 4);
  CHECK(lp.boundaries[0] == make_rat(1, 2));
  CHECK(lp.boundaries[1] == make_rat(3, 4));
  CHECK(lp.boundaries[2] == make_rat(9, 8));
  CHECK(lp.boundaries[3] == make_rat(27, 16));
  CHECK(lp.shifted_release[0] == make_rat(1, 2));
  for (size_t l = 1; l < lp.boundaries.size(); ++l)
    CHECK(lp.boundaries[l] == lp.boundaries[l - 1] * make_rat(3, 2));

  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == make_rat(53, 64));  // fills intervals front to back
}

TEST_CASE("interval lp rejects bad parameters") {
  auto inst = single({Rat(1)}, {Rat(1)}, {Rat(0)});
  CHECK_THROWS_AS(build_interval_indexed(inst, Rat(0), make_rat(1, 2)), ParseError);
  CHECK_THROWS_AS(build_interval_indexed(inst, make_rat(1, 2), Rat(0)), ParseError);
}

TEST_CASE("fixed alpha rounding is exact") {
  auto inst = single({Rat(1)}, {Rat(1)}, {Rat(0)});
  auto lp = build_interval_indexed(inst, make_rat(1, 2), make_rat(1, 2));
  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);

  auto sample = alpha_point_round_fixed(inst, lp, sol, Rat(1));
  CHECK(sample.schedule.completion[0] == make_rat(27, 16));
  CHECK(sample.cert_bound == make_rat(27, 16));
  CHECK(sample.within_bound);
  CHECK(check_schedule(inst, sample.schedule, 1e-9).ok);

  auto half = alpha_point_round_fixed(inst, lp, sol, make_rat(1, 2));
  CHECK(half.within_bound);
  CHECK(check_schedule(inst, half.schedule, 1e-9).ok);
  CHECK_THROWS_AS(alpha_point_round_fixed(inst, lp, sol, Rat(2)), ParseError);
}

TEST_CASE("seeded rounding is reproducible") {
  auto inst = single({Rat(2), Rat(1)}, {Rat(1), Rat(2)}, {Rat(0), Rat(1)});
  auto lp = build_interval_indexed(inst, make_rat(1, 4), make_rat(1, 4));
  auto sol = simplex_solve(lp.problem);
  REQUIRE(sol.status == LpStatus::Optimal);
  auto a = alpha_point_round(inst, lp, sol, 42);
  auto b = alpha_point_round(inst, lp, sol, 42);
  CHECK(a.alpha == b.alpha);
  CHECK(a.schedule.objective == b.schedule.objective);
  auto c = alpha_point_round(inst, lp, sol, 43);
  CHECK(a.alpha != c.alpha);
}

TEST_CASE("every sample carries its own bound") {
  RandomSpec spec;
  spec.kind = ModelKind::Single;
  spec.n_max = 4;
  spec.max_release = 3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_instance(spec, seed);
    auto lp = build_interval_indexed(inst, make_rat(1, 10), make_rat(1, 10));
    auto sol = simplex_solve(lp.problem);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto sample = alpha_point_round(inst, lp, sol, s);
      CHECK(sample.within_bound);
      CHECK(sample.schedule.objective <= sample.cert_bound);
      CHECK(check_schedule(inst, sample.schedule, 1e-9).ok);
    }
  }
}

TEST_CASE("beta tables evaluate per cell") {
  std::vector<BetaSegment> row = {{Int(0), Int(2), Rat(1), make_rat(1, 2)},
                                  {Int(4), Int(5), Rat(3), Rat(0)}};
  CHECK(beta_value(row, Int(0)) == Rat(1));
  CHECK(beta_value(row, Int(1)) == make_rat(3, 2));
  CHECK(beta_value(row, Int(2)) == Rat(0));  // outside every segment
  CHECK(beta_value(row, Int(4)) == Rat(3));
  CHECK(beta_row_total(row) == Rat(1) + make_rat(3, 2) + Rat(3));
}

TEST_CASE("dual feasibility check") {
  auto inst = single({Rat(1), Rat(2)}, {Rat(1), Rat(1)}, {Rat(0), Rat(0)});

  DualTables zero;
  zero.scale = 1;
  zero.alpha = {Rat(0), Rat(0)};
  zero.beta = {{}};
  zero.rows = {{Rat(1), Rat(1)}};
  auto rep = dual_constraint_check(inst, Rat(1), zero);
  CHECK(rep.feasible);
  CHECK(rep.objective == Rat(0));

  DualTables greedy = zero;
  greedy.alpha = {Rat(100), Rat(0)};
  auto bad = dual_constraint_check(inst, Rat(1), greedy);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.max_violation > 0);
  CHECK(bad.worst.job == 0);
  CHECK(bad.worst.cell == 0);  // the constraint is loosest at the release cell
  CHECK(bad.sum_alpha == Rat(100));
}
