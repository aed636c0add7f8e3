#include <algorithm>
#include <vector>

#include "pfsched/pf.hpp"

namespace pfsched {

EventTimeline run_pf(const Instance& ins, const PfOptions& opt) {
  const int n = ins.n();
  EventTimeline tl;
  tl.completion.assign(n, Rat(0));
  tl.objective = 0;
  if (n == 0) return tl;

  std::vector<Rat> remaining(n);
  std::vector<char> released(n, 0), done(n, 0);
  for (int j = 0; j < n; ++j) remaining[j] = ins.jobs[j].p;

  Rat t = 0;

  int left = n;
  while (left > 0) {
    for (int j = 0; j < n; ++j)
      if (!released[j] && ins.jobs[j].r <= t) released[j] = 1;

    std::vector<int> active;
    for (int j = 0; j < n; ++j)
      if (released[j] && !done[j]) active.push_back(j);

    bool haveNext = false;
    Rat nextRelease;
    for (int j = 0; j < n; ++j)
      if (!released[j] && (!haveNext || ins.jobs[j].r < nextRelease)) {
        nextRelease = ins.jobs[j].r;
        haveNext = true;
      }

    if (active.empty()) {
      if (!haveNext) throw SolverError("stalled with unfinished jobs");
      TimeSlice idle;
      idle.t0 = t;
      idle.t1 = nextRelease;
      idle.rates.exact = true;
      idle.rates.y.assign(n, Rat(0));
      tl.slices.push_back(std::move(idle));
      t = nextRelease;
      continue;
    }

    RateSolution sol = solve_eg_subset(ins, active, opt.solver, opt.tol);
    tl.exact = tl.exact && sol.exact;
    tl.max_gap = std::max(tl.max_gap, sol.gap);

    bool haveEnd = false;
    Rat tEnd;
    for (int j : active) {
      if (sol.y[j] <= 0) throw SolverError("active job with zero rate");
      const Rat c = t + remaining[j] / sol.y[j];
      if (!haveEnd || c < tEnd) {
        tEnd = c;
        haveEnd = true;
      }
    }
    if (haveNext && nextRelease < tEnd) tEnd = nextRelease;

    for (int j : active) remaining[j] -= sol.y[j] * (tEnd - t);

    TimeSlice slice;
    slice.t0 = t;
    slice.t1 = tEnd;
    slice.active = active;
    slice.rates = std::move(sol);
    tl.slices.push_back(std::move(slice));

    for (int j : active)
      if (remaining[j] == 0) {
        done[j] = 1;
        tl.completion[j] = tEnd;
        tl.objective += ins.jobs[j].w * tEnd;
        --left;
      }
    t = tEnd;
  }
  return tl;
}

Schedule timeline_schedule(const Instance& ins, const EventTimeline& tl) {
  Schedule s;
  s.completion = tl.completion;
  s.objective = tl.objective;
  for (const TimeSlice& sl : tl.slices) {
    RatePiece piece;
    piece.t0 = sl.t0;
    piece.t1 = sl.t1;
    piece.y = sl.rates.y.empty() ? std::vector<Rat>(ins.n(), Rat(0)) : sl.rates.y;
    piece.x = sl.rates.x;
    s.pieces.push_back(std::move(piece));
  }
  return s;
}

RateSolution pf_rates_hypothetical(const Instance& ins, const std::vector<int>& job_set,
                                   SolverChoice solver, double tol) {
  return solve_eg_subset(ins, job_set, solver, tol);
}

std::vector<StructuredPiece> decompose_structured(const Instance& ins, const EventTimeline& tl,
                                                  SolverChoice solver, double tol) {
  std::vector<StructuredPiece> pieces;
  if (tl.slices.empty()) return pieces;
  const Rat shift = tl.slices.front().t0;
  const int n = ins.n();

  for (const TimeSlice& sl : tl.slices) {
    StructuredPiece piece;
    piece.index = static_cast<int>(pieces.size());
    piece.from = sl.t0 - shift;
    piece.to = sl.t1 - shift;
    piece.processed.assign(n, Rat(0));
    piece.carried_weight = 0;
    const Rat len = sl.t1 - sl.t0;
    for (int j : sl.active) piece.processed[j] = sl.rates.y[j] * len;
    for (int j = 0; j < n; ++j)
      if (ins.jobs[j].r > sl.t0) piece.carried_weight += ins.jobs[j].w;

    // Rerun the piece as a fresh instance: CP rates depend only on weights,
    // so all positive jobs must finish together at the piece length.
    if (!sl.active.empty()) {
      const RateSolution fresh = solve_eg_subset(ins, sl.active, solver, tol);
      for (int j : sl.active) {
        if (fresh.y[j] <= 0) throw SolverError("fresh piece rate vanished");
        const Rat finish = piece.processed[j] / fresh.y[j];
        if (rat_dbl(rat_abs(finish - len)) > tol * std::max(1.0, rat_dbl(len)))
          throw SolverError("piece jobs do not finish simultaneously");
      }
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

SplitCheck verify_splitting_identity(const Instance& ins, const EventTimeline& tl) {
  SplitCheck chk;
  chk.lhs = chk.rhs = 0;
  if (tl.slices.empty()) {
    chk.holds = true;
    chk.residual = 0;
    return chk;
  }
  const Rat shift = tl.slices.front().t0;
  for (int j = 0; j < ins.n(); ++j) chk.lhs += ins.jobs[j].w * (tl.completion[j] - shift);
  for (const TimeSlice& sl : tl.slices) {
    const Rat len = sl.t1 - sl.t0;
    Rat alive = 0, carried = 0;
    for (int j : sl.active) alive += ins.jobs[j].w;
    for (int j = 0; j < ins.n(); ++j)
      if (ins.jobs[j].r > sl.t0) carried += ins.jobs[j].w;
    chk.rhs += len * (alive + carried);
  }
  chk.residual = rat_abs(chk.lhs - chk.rhs);
  chk.holds = chk.residual == 0;
  return chk;
}

}  // namespace pfsched
