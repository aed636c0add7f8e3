#pragma once

#include <vector>

#include "pfsched/egsolve.hpp"
#include "pfsched/model.hpp"

namespace pfsched {

// One maximal interval between consecutive events; rates are constant on it.
// Empty `active` marks an idle gap before a future release.
struct TimeSlice {
  Rat t0, t1;
  std::vector<int> active;
  RateSolution rates;  // full-length vectors, zero off the active set
};

struct EventTimeline {
  std::vector<TimeSlice> slices;
  std::vector<Rat> completion;
  Rat objective;
  bool exact = true;
  double max_gap = 0.0;  // worst per-slice solver gap
};

struct PfOptions {
  SolverChoice solver = SolverChoice::Auto;
  double tol = 1e-10;
};

// Event loop in absolute time: completions applied before releases, one
// re-solve per event. Rates, once frozen, make every event time exact.
EventTimeline run_pf(const Instance&, const PfOptions& = {});

Schedule timeline_schedule(const Instance&, const EventTimeline&);

// CP on an arbitrary unfinished set, ignoring release dates.
RateSolution pf_rates_hypothetical(const Instance&, const std::vector<int>& job_set,
                                   SolverChoice solver, double tol);

// Stage l of the splitting: times shifted so the first event sits at 0.
struct StructuredPiece {
  int index = 0;
  Rat from, to;
  std::vector<Rat> processed;  // p^(l), summing to p over all pieces
  Rat carried_weight;          // weight still unreleased at `from`
};

// Splits the run at its events and checks that each piece, rerun as a fresh
// uniform-release instance, finishes all its positive jobs simultaneously.
std::vector<StructuredPiece> decompose_structured(const Instance&, const EventTimeline&,
                                                  SolverChoice solver, double tol);

struct SplitCheck {
  bool holds = false;
  Rat lhs, rhs, residual;
};

// Accounting identity: shifted objective = sum over pieces of
// (weight of positive jobs + weight still unreleased) * piece length.
SplitCheck verify_splitting_identity(const Instance&, const EventTimeline&);

}  // namespace pfsched
