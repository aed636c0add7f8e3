#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfsched/model.hpp"
#include "pfsched/simplex.hpp"

namespace pfsched {

// Time-indexed LP(kappa) on unit cells. Time is stretched by `scale` so that
// every release and processing requirement lands on the integer grid; the
// optimum of `problem` is scale times the value in original units.
//
// Packing and single-machine models use rate variables y_{j,t}; machine models
// use assignment variables x_{i,j,t} with one capacity row per machine-cell
// and per job-cell. Capacity right-hand sides are 1/kappa.
struct TimeIndexedLp {
  LpProblem problem;
  Rat kappa;
  Int scale = 1;
  Int horizon = 0;  // number of cells
  bool assignment_form = false;
  std::vector<int> var_base;
  std::vector<Int> release_cell;
  std::vector<std::vector<int>> eligible;  // per job: machines with s_ij > 0

  int var_index(int j, const Int& t, int machine_slot = 0) const;
  std::string var_name(int v) const;
};

TimeIndexedLp build_time_indexed(const Instance&, const Rat& kappa);

inline Rat time_indexed_original_value(const TimeIndexedLp& lp, const Rat& scaled) {
  return scaled / Rat(lp.scale);
}

// Interval-indexed relaxation: geometric boundaries beta_l = delta*(1+eps)^l,
// releases shifted to r_j + delta, capacity 1 per row and interval. Variables
// y_{j,l} are rates over interval l = 1..L; the objective charges each unit of
// work the interval's left endpoint.
struct IntervalLp {
  LpProblem problem;
  Rat eps, delta;
  std::vector<Rat> boundaries;         // beta_0..beta_L
  std::vector<std::vector<int>> var_of;  // [j][l], -1 where y_{j,l} is fixed to 0
  std::vector<Rat> shifted_release;    // r_j + delta
};

IntervalLp build_interval_indexed(const Instance&, const Rat& eps, const Rat& delta);

// alpha-point rounding of an interval LP optimum. alpha is sqrt(u) for u
// uniform on the 2^-30 grid, truncated to the same grid so the schedule stays
// rational. Each sample carries its own certificate: C_j <= (1+eps)*C_j(alpha)/alpha
// holds exactly, job by job.
struct RoundedSample {
  Rat alpha;
  Schedule schedule;
  Rat cert_bound;       // (1+eps) * sum_j w_j C_j(alpha) / alpha
  bool within_bound = false;
};

RoundedSample alpha_point_round(const Instance&, const IntervalLp&, const LpSolution&,
                                std::uint64_t seed);
RoundedSample alpha_point_round_fixed(const Instance&, const IntervalLp&, const LpSolution&,
                                      const Rat& alpha);

// Piecewise-affine dual table for DLP(kappa) feasibility checks. A segment
// contributes c0 + c1*t on integer cells t in [t0, t1); rows are zero outside
// their segments. When `rows` is nonempty it is the packing coefficient matrix
// the beta rows refer to; otherwise beta has m + n rows (machines then jobs)
// and constraints are instantiated per machine-job pair.
struct BetaSegment {
  Int t0, t1;
  Rat c0, c1;
};

struct DualTables {
  Int scale = 1;
  std::vector<Rat> alpha;                      // per job
  std::vector<std::vector<BetaSegment>> beta;  // per row, ascending disjoint
  std::vector<std::vector<Rat>> rows;          // packing form; empty => assignment form
};

Rat beta_value(const std::vector<BetaSegment>& row, const Int& t);
Rat beta_row_total(const std::vector<BetaSegment>& row);

struct DualCheckWitness {
  int job = -1;
  int row = -1;  // assignment form: machine index; packing form: -1
  Int cell = 0;
  Rat violation;
};

struct DualCheckReport {
  bool feasible = true;   // max_violation <= 0
  Rat max_violation;      // in original time units; <= 0 when feasible
  DualCheckWitness worst;
  Rat sum_alpha, sum_beta, objective;  // scaled frame
};

// Checks alpha_j/p_j - (w_j/p_j)(t+1/2) <= kappa * <row beta> on every cell
// from the job's release on. The left side decreases in t and the right side
// is piecewise affine, so segment endpoints are the only candidate cells.
DualCheckReport dual_constraint_check(const Instance&, const Rat& kappa, const DualTables&);

}  // namespace pfsched
