#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "pfsched/egsolve.hpp"

namespace pfsched {
namespace {

std::vector<Rat> machine_speeds(const Instance& ins) {
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

// Subset positions sorted by weight descending, ties by original id.
std::vector<int> weight_order(const Instance& ins, const std::vector<int>& subset) {
  std::vector<int> order = subset;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (ins.jobs[a].w != ins.jobs[b].w) return ins.jobs[a].w > ins.jobs[b].w;
    return a < b;
  });
  return order;
}

// Polymatroid rows for a speed profile: y(S) <= s_1 + .. + s_|S| for every
// nonempty S, normalized to coefficients 1/rhs. Exponential; cross-check only.
std::vector<std::vector<Rat>> polymatroid_rows(const std::vector<Rat>& speeds, int k) {
  if (k > 14) throw SolverError("polymatroid row family too large");
  std::vector<Rat> cap(k + 1, Rat(0));
  for (int c = 1; c <= k; ++c)
    cap[c] = cap[c - 1] + (c - 1 < static_cast<int>(speeds.size()) ? speeds[c - 1] : Rat(0));
  std::vector<std::vector<Rat>> rows;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    const int c = __builtin_popcount(mask);
    if (cap[c] == 0) throw SolverError("zero-capacity polymatroid row");
    std::vector<Rat> row(k, Rat(0));
    for (int j = 0; j < k; ++j)
      if (mask & (1u << j)) row[j] = 1 / cap[c];
    rows.push_back(std::move(row));
  }
  return rows;
}

RateSolution solve_assignment_view(const Instance& ins, const std::vector<int>& subset,
                                   double tol) {
  const int m = ins.machines();
  const int k = static_cast<int>(subset.size());
  std::vector<std::vector<Rat>> s(m, std::vector<Rat>(k));
  std::vector<Rat> w(k);
  for (int c = 0; c < k; ++c) {
    w[c] = ins.jobs[subset[c]].w;
    for (int i = 0; i < m; ++i) s[i][c] = ins.speed(i, subset[c]);
  }
  RateSolution sub = solve_eg_unrelated(s, w, tol);
  const double sat = std::max(1e-6, 100 * tol);
  auto [eta, delta] = recover_multipliers_assignment(s, w, sub.y, sub.x, sat);
  sub.eta = std::move(eta);
  sub.delta = std::move(delta);

  RateSolution sol;
  sol.exact = false;
  sol.gap = sub.gap;
  sol.y.assign(ins.n(), Rat(0));
  sol.delta.assign(ins.n(), Rat(0));
  sol.x.assign(m, std::vector<Rat>(ins.n(), Rat(0)));
  sol.eta = sub.eta;
  for (int c = 0; c < k; ++c) {
    sol.y[subset[c]] = sub.y[c];
    sol.delta[subset[c]] = sub.delta[c];
    for (int i = 0; i < m; ++i) sol.x[i][subset[c]] = sub.x[i][c];
  }
  return sol;
}

RateSolution solve_related_view(const Instance& ins, const std::vector<int>& subset, double) {
  const std::vector<Rat> speeds = machine_speeds(ins);
  const std::vector<int> order = weight_order(ins, subset);
  std::vector<Rat> w;
  w.reserve(order.size());
  for (int id : order) w.push_back(ins.jobs[id].w);
  auto [sub, dec] = solve_eg_related(speeds, w);

  RateSolution sol;
  sol.exact = true;
  sol.eta = sub.eta;
  sol.y.assign(ins.n(), Rat(0));
  sol.delta.assign(ins.n(), Rat(0));
  sol.x.assign(speeds.size(), std::vector<Rat>(ins.n(), Rat(0)));
  for (size_t pos = 0; pos < order.size(); ++pos) {
    sol.y[order[pos]] = sub.y[pos];
    sol.delta[order[pos]] = sub.delta[pos];
    for (size_t i = 0; i < speeds.size(); ++i) sol.x[i][order[pos]] = sub.x[i][pos];
  }
  return sol;
}

RateSolution solve_packing_view(const Instance& ins, const std::vector<int>& subset, double tol) {
  const int k = static_cast<int>(subset.size());
  std::vector<std::vector<Rat>> rows;
  if (ins.model.kind == ModelKind::Packing) {
    for (const auto& row : ins.model.rows) {
      std::vector<Rat> r(k);
      for (int c = 0; c < k; ++c) r[c] = row[subset[c]];
      rows.push_back(std::move(r));
    }
  } else {
    rows = polymatroid_rows(machine_speeds(ins), k);
  }
  std::vector<Rat> w(k);
  for (int c = 0; c < k; ++c) w[c] = ins.jobs[subset[c]].w;
  RateSolution sub = solve_eg_packing(rows, w, tol);

  RateSolution sol;
  sol.exact = false;
  sol.gap = sub.gap;
  sol.y.assign(ins.n(), Rat(0));
  if (ins.model.kind == ModelKind::Packing) sol.eta = sub.eta;
  for (int c = 0; c < k; ++c) sol.y[subset[c]] = sub.y[c];
  return sol;
}

}  // namespace

std::vector<std::vector<Rat>> packing_row_family(const Instance& ins) {
  if (ins.model.kind == ModelKind::Packing) return ins.model.rows;
  if (ins.model.kind == ModelKind::Unrelated)
    throw SolverError("no packing row family for unrelated machines");
  return polymatroid_rows(machine_speeds(ins), ins.n());
}

SolverChoice solver_from_name(const std::string& name) {
  if (name == "auto") return SolverChoice::Auto;
  if (name == "packing") return SolverChoice::Packing;
  if (name == "related") return SolverChoice::Related;
  if (name == "unrelated") return SolverChoice::Unrelated;
  throw ParseError("unknown solver: " + name);
}

std::string solver_name(SolverChoice c) {
  switch (c) {
    case SolverChoice::Auto:
      return "auto";
    case SolverChoice::Packing:
      return "packing";
    case SolverChoice::Related:
      return "related";
    case SolverChoice::Unrelated:
      return "unrelated";
  }
  return "auto";
}

RateSolution solve_eg_subset(const Instance& ins, const std::vector<int>& subset,
                             SolverChoice choice, double tol) {
  for (int id : subset)
    if (id < 0 || id >= ins.n()) throw SolverError("job id out of range");
  if (subset.empty()) {
    RateSolution sol;
    sol.exact = true;
    sol.y.assign(ins.n(), Rat(0));
    sol.delta.assign(ins.n(), Rat(0));
    const int m = ins.machines();
    if (ins.model.kind == ModelKind::Packing)
      sol.eta.assign(ins.model.rows.size(), Rat(0));
    else
      sol.eta.assign(m, Rat(0));
    sol.x.assign(m, std::vector<Rat>(ins.n(), Rat(0)));
    return sol;
  }

  if (choice == SolverChoice::Auto) {
    switch (ins.model.kind) {
      case ModelKind::Packing:
        choice = SolverChoice::Packing;
        break;
      case ModelKind::Unrelated:
        choice = SolverChoice::Unrelated;
        break;
      default:
        choice = SolverChoice::Related;
    }
  }
  switch (choice) {
    case SolverChoice::Packing:
      if (ins.model.kind == ModelKind::Unrelated)
        throw SolverError("no packing row family for unrelated machines");
      return solve_packing_view(ins, subset, tol);
    case SolverChoice::Related:
      if (ins.model.kind == ModelKind::Packing || ins.model.kind == ModelKind::Unrelated)
        throw SolverError("level solver needs a uniform speed profile");
      return solve_related_view(ins, subset, tol);
    case SolverChoice::Unrelated:
      if (ins.model.kind == ModelKind::Packing)
        throw SolverError("assignment solver needs machines");
      return solve_assignment_view(ins, subset, tol);
    case SolverChoice::Auto:
      break;
  }
  throw SolverError("unresolved solver choice");
}

double KktReport::max_dbl() const {
  return std::max(std::max(rat_dbl(stationarity), rat_dbl(complementarity)),
                  std::max(rat_dbl(feasibility), rat_dbl(multiplier_sum)));
}

KktReport kkt_residual(const Instance& ins, const std::vector<int>& subset,
                       const RateSolution& sol) {
  KktReport rep;
  rep.stationarity = rep.complementarity = rep.feasibility = rep.multiplier_sum = Rat(0);
  if (subset.empty()) return rep;
  Rat W = 0;
  for (int id : subset) W += ins.jobs[id].w;
  const auto bump = [](Rat& slot, const Rat& v) { slot = rat_max(slot, rat_abs(v)); };

  if (ins.model.kind == ModelKind::Packing) {
    const auto& rows = ins.model.rows;
    Rat etaSum = 0;
    for (const Rat& e : sol.eta) etaSum += e;
    for (int id : subset) {
      if (sol.y[id] <= 0) throw SolverError("nonpositive rate in subset");
      Rat c = 0;
      for (size_t d = 0; d < rows.size(); ++d) c += rows[d][id] * sol.eta[d];
      bump(rep.stationarity, 1 - c * sol.y[id] / ins.jobs[id].w);
    }
    for (size_t d = 0; d < rows.size(); ++d) {
      Rat load = 0;
      for (int id : subset) load += rows[d][id] * sol.y[id];
      bump(rep.feasibility, rat_max(Rat(0), load - 1));
      bump(rep.complementarity, sol.eta[d] * (1 - load));
    }
    rep.multiplier_sum = rat_abs(etaSum - W) / W;
    return rep;
  }

  const int m = ins.machines();
  if (sol.x.empty()) throw SolverError("assignment residual needs the x witness");
  Rat msum = 0;
  for (const Rat& e : sol.eta) msum += e;
  for (int id : subset) msum += sol.delta[id];
  rep.multiplier_sum = rat_abs(msum - W) / W;

  for (int id : subset) {
    if (sol.y[id] <= 0) throw SolverError("nonpositive rate in subset");
    Rat use = 0, rate = 0;
    for (int i = 0; i < m; ++i) {
      use += sol.x[i][id];
      rate += ins.speed(i, id) * sol.x[i][id];
      const Rat s = ins.speed(i, id);
      if (s == 0) {
        if (sol.x[i][id] != 0) bump(rep.feasibility, sol.x[i][id]);
        continue;
      }
      const Rat c = s * ins.jobs[id].w / sol.y[id];
      const Rat gap = (sol.eta[i] + sol.delta[id] - c) / c;
      if (gap < 0) bump(rep.stationarity, gap);
      if (sol.x[i][id] > 0) bump(rep.stationarity, gap);
    }
    bump(rep.feasibility, rat_max(Rat(0), use - 1));
    bump(rep.feasibility, (rate - sol.y[id]) / sol.y[id]);
    bump(rep.complementarity, sol.delta[id] * (1 - use));
  }
  for (int i = 0; i < m; ++i) {
    Rat load = 0;
    for (int id : subset) load += sol.x[i][id];
    bump(rep.feasibility, rat_max(Rat(0), load - 1));
    bump(rep.complementarity, sol.eta[i] * (1 - load));
  }
  return rep;
}

std::vector<MonotonicityViolation> test_monotonicity(const Instance& ins,
                                                     const std::vector<std::vector<int>>& subsets,
                                                     double tol) {
  std::vector<std::vector<int>> sorted;
  std::vector<RateSolution> sols;
  for (const auto& sub : subsets) {
    std::vector<int> s = sub;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sols.push_back(solve_eg_subset(ins, s, SolverChoice::Auto, std::min(tol * 1e-2, 1e-9)));
    sorted.push_back(std::move(s));
  }
  std::vector<MonotonicityViolation> out;
  for (size_t a = 0; a < sorted.size(); ++a)
    for (size_t b = 0; b < sorted.size(); ++b) {
      if (a == b || sorted[a] == sorted[b]) continue;
      if (!std::includes(sorted[b].begin(), sorted[b].end(), sorted[a].begin(), sorted[a].end()))
        continue;
      for (int id : sorted[a]) {
        const double ya = rat_dbl(sols[a].y[id]);
        const double yb = rat_dbl(sols[b].y[id]);
        if (ya < yb - tol)
          out.push_back({id, static_cast<int>(a), static_cast<int>(b), ya, yb});
      }
    }
  return out;
}

}  // namespace pfsched
