#pragma once

#include <vector>

#include "pfsched/model.hpp"

namespace pfsched {

// Shortest remaining processing time, ties to the smallest index. Optimal for
// total completion time on a single machine with releases.
Schedule srpt_single(const Instance&);

// Objective only, no piece assembly; handles tens of thousands of jobs.
Rat srpt_single_objective(const Instance&);

// k shortest unfinished jobs on the k fastest machines; remaining-time order
// never inverts, so events are completions only. Uniform release, unit weights.
Schedule preemptive_spt_related(const Instance&);

struct MuVector {
  std::vector<Rat> lambda;
  std::vector<Rat> mu;  // suffix sums, non-increasing
};

// Coefficients with OPT(p) = sum_k mu_k p_(k) for p sorted ascending.
MuVector mu_vector(const std::vector<Rat>& speeds, int n);

Rat opt0_related(const std::vector<Rat>& speeds, std::vector<Rat> p);

struct SuperadditivityReport {
  std::vector<Rat> margins;  // OPT(p) - sum_parts OPT(part), per partition
  Rat min_margin;
  bool ok = true;  // all margins nonnegative
};

SuperadditivityReport check_superadditivity_related(
    const std::vector<Rat>& speeds, const std::vector<Rat>& p,
    const std::vector<std::vector<std::vector<Rat>>>& partitions);

// Greedy list schedule: jobs by best w s / p ratio, each placed where the
// objective grows least. Feasible upper bound, not an optimum.
Schedule wspt_nonpreemptive_unrelated(const Instance&);

// Exact minimum over all machine assignments with per-machine WSPT order.
// Exponential; assignment models with uniform releases, n small.
Rat brute_force_opt_nonpreemptive(const Instance&);

struct OptBracket {
  Rat lower;  // LP(1) optimum, tighter as grid grows
  Rat upper;  // best feasible schedule found
};

// grid refines the LP(1) cell width by that factor.
OptBracket brute_force_opt_preemptive(const Instance&, int grid = 1);

}  // namespace pfsched
