#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "pfsched/baselines.hpp"
#include "pfsched/lp.hpp"
#include "pfsched/pf.hpp"
#include "pfsched/simplex.hpp"

namespace pfsched {
namespace {

std::vector<Rat> uniform_speeds(const Instance& ins) {
  switch (ins.model.kind) {
    case ModelKind::Single:
      return {Rat(1)};
    case ModelKind::Identical:
      return std::vector<Rat>(ins.model.m, Rat(1));
    case ModelKind::Related:
      return ins.model.speeds;
    default:
      throw SolverError("model has no uniform speed profile");
  }
}

Rat common_release(const Instance& ins) {
  const Rat r0 = ins.jobs.empty() ? Rat(0) : ins.jobs[0].r;
  for (const auto& jb : ins.jobs)
    if (jb.r != r0) throw SolverError("schedule rule needs a common release");
  return r0;
}

}  // namespace

Schedule srpt_single(const Instance& ins) {
  if (ins.model.kind != ModelKind::Single) throw SolverError("SRPT runs on a single machine");
  const int n = ins.n();
  Schedule sch;
  sch.completion.assign(n, Rat(0));
  sch.objective = 0;
  if (n == 0) return sch;

  std::vector<Rat> rem(n);
  Rat t = ins.jobs[0].r;
  for (int j = 0; j < n; ++j) {
    rem[j] = ins.jobs[j].p;
    t = rat_min(t, ins.jobs[j].r);
  }
  int left = n;
  while (left > 0) {
    int pick = -1;
    bool pending = false;
    Rat nextRelease = 0;
    for (int j = 0; j < n; ++j) {
      if (rem[j] == 0) continue;
      if (ins.jobs[j].r > t) {
        if (!pending || ins.jobs[j].r < nextRelease) nextRelease = ins.jobs[j].r;
        pending = true;
        continue;
      }
      if (pick < 0 || rem[j] < rem[pick]) pick = j;
    }
    if (pick < 0) {
      if (!pending) throw SolverError("SRPT stalled with unfinished jobs");
      RatePiece idle;
      idle.t0 = t;
      idle.t1 = nextRelease;
      idle.y.assign(n, Rat(0));
      sch.pieces.push_back(std::move(idle));
      t = nextRelease;
      continue;
    }
    Rat stop = t + rem[pick];
    if (pending && nextRelease < stop) stop = nextRelease;
    RatePiece piece;
    piece.t0 = t;
    piece.t1 = stop;
    piece.y.assign(n, Rat(0));
    piece.y[pick] = 1;
    rem[pick] -= stop - t;
    if (rem[pick] == 0) {
      sch.completion[pick] = stop;
      sch.objective += ins.jobs[pick].w * stop;
      --left;
    }
    sch.pieces.push_back(std::move(piece));
    t = stop;
  }
  return sch;
}

Rat srpt_single_objective(const Instance& ins) {
  if (ins.model.kind != ModelKind::Single) throw SolverError("SRPT runs on a single machine");
  const int n = ins.n();
  std::vector<int> byRelease(n);
  std::iota(byRelease.begin(), byRelease.end(), 0);
  std::sort(byRelease.begin(), byRelease.end(),
            [&](int a, int b) { return ins.jobs[a].r < ins.jobs[b].r; });

  std::set<std::pair<Rat, int>> ready;  // (remaining, job)
  Rat t = 0, objective = 0;
  std::size_t next = 0;
  while (next < byRelease.size() || !ready.empty()) {
    if (ready.empty()) {
      t = rat_max(t, ins.jobs[byRelease[next]].r);
      while (next < byRelease.size() && ins.jobs[byRelease[next]].r <= t) {
        const int j = byRelease[next++];
        ready.emplace(ins.jobs[j].p, j);
      }
      continue;
    }
    auto top = ready.begin();
    const Rat finish = t + top->first;
    if (next < byRelease.size() && ins.jobs[byRelease[next]].r < finish) {
      const Rat r = ins.jobs[byRelease[next]].r;
      auto node = ready.extract(top);
      node.value().first -= r - t;
      ready.insert(std::move(node));
      t = r;
      while (next < byRelease.size() && ins.jobs[byRelease[next]].r <= t) {
        const int j = byRelease[next++];
        ready.emplace(ins.jobs[j].p, j);
      }
    } else {
      objective += ins.jobs[top->second].w * finish;
      ready.erase(top);
      t = finish;
    }
  }
  return objective;
}

Schedule preemptive_spt_related(const Instance& ins) {
  const std::vector<Rat> speeds = uniform_speeds(ins);
  const Rat r0 = common_release(ins);
  const int n = ins.n();
  const int m = static_cast<int>(speeds.size());

  Schedule sch;
  sch.completion.assign(n, Rat(0));
  sch.objective = 0;
  std::vector<Rat> rem(n);
  for (int j = 0; j < n; ++j) rem[j] = ins.jobs[j].p;
  Rat t = r0;
  int left = n;
  while (left > 0) {
    std::vector<int> order;
    for (int j = 0; j < n; ++j)
      if (rem[j] > 0) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (rem[a] != rem[b]) return rem[a] < rem[b];
      return a < b;
    });
    // Shorter jobs on faster machines; the sort order cannot invert before a
    // completion, so completions are the only events.
    Rat dt = 0;
    bool bounded = false;
    const int active = std::min<int>(static_cast<int>(order.size()), m);
    for (int pos = 0; pos < active; ++pos) {
      if (speeds[pos] == 0) break;
      const Rat need = rem[order[pos]] / speeds[pos];
      if (!bounded || need < dt) dt = need;
      bounded = true;
    }
    if (!bounded) throw SolverError("no positive speed available");

    RatePiece piece;
    piece.t0 = t;
    piece.t1 = t + dt;
    piece.y.assign(n, Rat(0));
    piece.x.assign(m, std::vector<Rat>(n, Rat(0)));
    for (int pos = 0; pos < active; ++pos) {
      const int j = order[pos];
      piece.y[j] = speeds[pos];
      piece.x[pos][j] = 1;
      rem[j] -= speeds[pos] * dt;
    }
    t += dt;
    for (int j = 0; j < n; ++j) {
      if (piece.y[j] > 0 && rem[j] == 0) {
        sch.completion[j] = t;
        sch.objective += ins.jobs[j].w * t;
        --left;
      }
    }
    sch.pieces.push_back(std::move(piece));
  }
  return sch;
}

MuVector mu_vector(const std::vector<Rat>& speeds, int n) {
  if (speeds.empty() || speeds[0] <= 0) throw SolverError("mu vector needs a positive top speed");
  const auto s = [&](int k) { return k <= static_cast<int>(speeds.size()) ? speeds[k - 1] : Rat(0); };
  MuVector mv;
  mv.lambda.assign(n, Rat(0));
  for (int j = n; j >= 1; --j) {
    Rat acc = 1;
    for (int k = j + 1; k <= n; ++k) acc -= s(k - j + 1) * mv.lambda[k - 1];
    mv.lambda[j - 1] = acc / s(1);
  }
  mv.mu.assign(n, Rat(0));
  Rat suffix = 0;
  for (int k = n; k >= 1; --k) {
    suffix += mv.lambda[k - 1];
    mv.mu[k - 1] = suffix;
  }
  return mv;
}

Rat opt0_related(const std::vector<Rat>& speeds, std::vector<Rat> p) {
  p.erase(std::remove(p.begin(), p.end(), Rat(0)), p.end());
  if (p.empty()) return Rat(0);
  std::sort(p.begin(), p.end());
  const MuVector mv = mu_vector(speeds, static_cast<int>(p.size()));
  Rat total = 0;
  for (size_t k = 0; k < p.size(); ++k) total += mv.mu[k] * p[k];
  return total;
}

SuperadditivityReport check_superadditivity_related(
    const std::vector<Rat>& speeds, const std::vector<Rat>& p,
    const std::vector<std::vector<std::vector<Rat>>>& partitions) {
  SuperadditivityReport rep;
  const Rat whole = opt0_related(speeds, p);
  for (const auto& parts : partitions) {
    std::vector<Rat> sum(p.size(), Rat(0));
    Rat best = 0;
    for (const auto& part : parts) {
      if (part.size() != p.size()) throw ParseError("partition part has wrong length");
      for (size_t j = 0; j < part.size(); ++j) {
        if (part[j] < 0) throw ParseError("negative processing in partition");
        sum[j] += part[j];
      }
      best += opt0_related(speeds, part);
    }
    if (sum != p) throw ParseError("partition does not sum to the instance");
    rep.margins.push_back(whole - best);
  }
  rep.min_margin = 0;
  for (size_t i = 0; i < rep.margins.size(); ++i)
    rep.min_margin = i == 0 ? rep.margins[i] : rat_min(rep.min_margin, rep.margins[i]);
  rep.ok = rep.margins.empty() || rep.min_margin >= 0;
  return rep;
}

Schedule wspt_nonpreemptive_unrelated(const Instance& ins) {
  if (!ins.assignment_kind() && ins.model.kind != ModelKind::Single)
    throw SolverError("list scheduling needs machines");
  const int n = ins.n();
  const int m = ins.machines();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Rat> prio(n, Rat(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      prio[j] = rat_max(prio[j], ins.jobs[j].w * ins.speed(i, j) / ins.jobs[j].p);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (prio[a] != prio[b]) return prio[a] > prio[b];
    return a < b;
  });

  struct Run {
    Rat start, end;
    int job, machine;
  };
  std::vector<Run> runs;
  std::vector<Rat> avail(m, Rat(0));
  Schedule sch;
  sch.completion.assign(n, Rat(0));
  sch.objective = 0;
  for (int j : order) {
    int best = -1;
    Rat bestC = 0;
    for (int i = 0; i < m; ++i) {
      if (ins.speed(i, j) == 0) continue;
      const Rat start = rat_max(avail[i], ins.jobs[j].r);
      const Rat c = start + ins.jobs[j].p / ins.speed(i, j);
      if (best < 0 || c < bestC) {
        best = i;
        bestC = c;
      }
    }
    if (best < 0) throw SolverError("job runs on no machine");
    const Rat start = rat_max(avail[best], ins.jobs[j].r);
    runs.push_back({start, bestC, j, best});
    avail[best] = bestC;
    sch.completion[j] = bestC;
    sch.objective += ins.jobs[j].w * bestC;
  }

  std::vector<Rat> cuts;
  for (const auto& run : runs) {
    cuts.push_back(run.start);
    cuts.push_back(run.end);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    RatePiece piece;
    piece.t0 = cuts[c];
    piece.t1 = cuts[c + 1];
    piece.y.assign(n, Rat(0));
    piece.x.assign(m, std::vector<Rat>(n, Rat(0)));
    for (const auto& run : runs) {
      if (run.start <= piece.t0 && piece.t1 <= run.end) {
        piece.y[run.job] = ins.speed(run.machine, run.job);
        piece.x[run.machine][run.job] = 1;
      }
    }
    sch.pieces.push_back(std::move(piece));
  }
  return sch;
}

Rat brute_force_opt_nonpreemptive(const Instance& ins) {
  if (!ins.assignment_kind() && ins.model.kind != ModelKind::Single)
    throw SolverError("brute force needs machines");
  const Rat r0 = common_release(ins);
  const int n = ins.n();
  const int m = ins.machines();
  if (n == 0) return Rat(0);

  double combos = 1;
  for (int j = 0; j < n; ++j) combos *= m;
  if (combos > 2e6) throw SolverError("assignment enumeration too large");

  std::vector<int> assign(n, 0);
  bool found = false;
  Rat best = 0;
  const auto evaluate = [&]() {
    Rat total = 0;
    for (int i = 0; i < m; ++i) {
      std::vector<int> mine;
      for (int j = 0; j < n; ++j)
        if (assign[j] == i) {
          if (ins.speed(i, j) == 0) return;
          mine.push_back(j);
        }
      std::sort(mine.begin(), mine.end(), [&](int a, int b) {
        const Rat ra = ins.jobs[a].w * ins.speed(i, a) / ins.jobs[a].p;
        const Rat rb = ins.jobs[b].w * ins.speed(i, b) / ins.jobs[b].p;
        if (ra != rb) return ra > rb;
        return a < b;
      });
      Rat t = r0;
      for (int j : mine) {
        t += ins.jobs[j].p / ins.speed(i, j);
        total += ins.jobs[j].w * t;
      }
    }
    if (!found || total < best) {
      best = total;
      found = true;
    }
  };
  while (true) {
    evaluate();
    int pos = n - 1;
    while (pos >= 0 && assign[pos] == m - 1) assign[pos--] = 0;
    if (pos < 0) break;
    ++assign[pos];
  }
  if (!found) throw SolverError("no feasible assignment");
  return best;
}

OptBracket brute_force_opt_preemptive(const Instance& ins, int grid) {
  if (grid < 1) throw ParseError("grid factor must be positive");
  Instance scaled = ins;
  for (auto& jb : scaled.jobs) {
    jb.p *= grid;
    jb.r *= grid;
  }
  const TimeIndexedLp lp = build_time_indexed(scaled, Rat(1));
  const LpSolution sol = simplex_solve(lp.problem);
  if (sol.status != LpStatus::Optimal) throw SolverError("time-indexed LP did not solve");

  OptBracket out;
  out.lower = time_indexed_original_value(lp, sol.objective) / grid;

  const EventTimeline tl = run_pf(ins, PfOptions{});
  out.upper = tl.objective;
  if (ins.model.kind == ModelKind::Single)
    out.upper = rat_min(out.upper, srpt_single(ins).objective);
  const bool machines = ins.model.kind != ModelKind::Packing;
  bool uniformRelease = true;
  for (const auto& jb : ins.jobs)
    if (jb.r != ins.jobs[0].r) uniformRelease = false;
  if (machines) out.upper = rat_min(out.upper, wspt_nonpreemptive_unrelated(ins).objective);
  if (machines && uniformRelease) {
    double combos = 1;
    for (int j = 0; j < ins.n(); ++j) combos *= ins.machines();
    if (combos <= 2e5) out.upper = rat_min(out.upper, brute_force_opt_nonpreemptive(ins));
  }
  if (ins.model.kind != ModelKind::Packing && ins.model.kind != ModelKind::Unrelated &&
      uniformRelease)
    out.upper = rat_min(out.upper, preemptive_spt_related(ins).objective);
  return out;
}

}  // namespace pfsched
