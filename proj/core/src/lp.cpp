#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pfsched/egsolve.hpp"
#include "pfsched/lp.hpp"

namespace pfsched {
namespace {

constexpr long kMaxCells = 50000;
constexpr int kMaxIntervals = 20000;

Int release_cell_of(const Rat& r, const Int& scale) { return ceil_rat(r * Rat(scale)); }

// Tightest single-row coefficient per job; 1/rho_j is the job's best rate.
std::vector<Rat> alone_coefficients(const std::vector<std::vector<Rat>>& rows, int n) {
  std::vector<Rat> rho(n, Rat(0));
  for (const auto& row : rows)
    for (int j = 0; j < n; ++j) rho[j] = rat_max(rho[j], row[j]);
  for (int j = 0; j < n; ++j)
    if (rho[j] == 0) throw SolverError("job misses every packing row");
  return rho;
}

long to_long(const Int& v) { return mpz_get_si(v.get_mpz_t()); }

}  // namespace

int TimeIndexedLp::var_index(int j, const Int& t, int machine_slot) const {
  const long off = to_long(t - release_cell[j]);
  if (assignment_form)
    return var_base[j] + static_cast<int>(off) * static_cast<int>(eligible[j].size()) +
           machine_slot;
  return var_base[j] + static_cast<int>(off);
}

std::string TimeIndexedLp::var_name(int v) const {
  const int n = static_cast<int>(var_base.size());
  for (int j = n - 1; j >= 0; --j) {
    if (v < var_base[j]) continue;
    const int off = v - var_base[j];
    if (!assignment_form)
      return "y[" + std::to_string(j) + "][" + Int(release_cell[j] + off).get_str() + "]";
    const int k = static_cast<int>(eligible[j].size());
    const Int t = release_cell[j] + Int(off / k);
    return "x[" + std::to_string(eligible[j][off % k]) + "][" + std::to_string(j) + "][" +
           t.get_str() + "]";
  }
  throw SolverError("variable index out of range");
}

TimeIndexedLp build_time_indexed(const Instance& ins, const Rat& kappa) {
  if (kappa < 1) throw ParseError("kappa must be at least 1");
  validate_instance(ins);
  const int n = ins.n();

  TimeIndexedLp lp;
  lp.kappa = kappa;
  lp.assignment_form = ins.assignment_kind();
  {
    std::vector<Rat> vals;
    for (const auto& jb : ins.jobs) {
      vals.push_back(jb.p);
      vals.push_back(jb.r);
    }
    lp.scale = denominator_lcm(vals);
  }

  std::vector<Rat> pScaled(n);
  Int rMax = 0;
  for (int j = 0; j < n; ++j) {
    pScaled[j] = ins.jobs[j].p * Rat(lp.scale);
    lp.release_cell.push_back(release_cell_of(ins.jobs[j].r, lp.scale));
    rMax = std::max(rMax, Int(lp.release_cell[j]));
  }

  std::vector<std::vector<Rat>> packRows;
  Rat span = 0;
  if (lp.assignment_form) {
    lp.eligible.resize(n);
    for (int j = 0; j < n; ++j) {
      Rat best = 0;
      for (int i = 0; i < ins.machines(); ++i) {
        if (ins.speed(i, j) > 0) lp.eligible[j].push_back(i);
        best = rat_max(best, ins.speed(i, j));
      }
      span += pScaled[j] / best;
    }
  } else {
    packRows = ins.model.kind == ModelKind::Single
                   ? std::vector<std::vector<Rat>>{std::vector<Rat>(n, Rat(1))}
                   : ins.model.rows;
    const std::vector<Rat> rho = alone_coefficients(packRows, n);
    for (int j = 0; j < n; ++j) span += pScaled[j] * rho[j];
  }
  lp.horizon = rMax + ceil_rat(kappa * span) + 1;
  if (lp.horizon > kMaxCells) throw SolverError("time-indexed horizon too large");

  const Rat cap = 1 / kappa;
  for (int j = 0; j < n; ++j) {
    lp.var_base.push_back(lp.problem.nvars);
    const Rat wp = ins.jobs[j].w / pScaled[j];
    for (Int t = lp.release_cell[j]; t < lp.horizon; ++t) {
      const Rat price = wp * (Rat(t) + Rat(1, 2));
      if (lp.assignment_form) {
        for (int i : lp.eligible[j]) lp.problem.add_var(ins.speed(i, j) * price);
      } else {
        lp.problem.add_var(price);
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, Rat>> cov;
    for (Int t = lp.release_cell[j]; t < lp.horizon; ++t) {
      if (lp.assignment_form) {
        for (size_t k = 0; k < lp.eligible[j].size(); ++k)
          cov.emplace_back(lp.var_index(j, t, static_cast<int>(k)),
                           ins.speed(lp.eligible[j][k], j));
      } else {
        cov.emplace_back(lp.var_index(j, t), Rat(1));
      }
    }
    lp.problem.add_row(std::move(cov), RowSense::GE, pScaled[j]);
  }

  for (Int t = 0; t < lp.horizon; ++t) {
    if (lp.assignment_form) {
      for (int i = 0; i < ins.machines(); ++i) {
        std::vector<std::pair<int, Rat>> row;
        for (int j = 0; j < n; ++j) {
          if (t < lp.release_cell[j]) continue;
          const auto& el = lp.eligible[j];
          const auto it = std::find(el.begin(), el.end(), i);
          if (it == el.end()) continue;
          row.emplace_back(lp.var_index(j, t, static_cast<int>(it - el.begin())), Rat(1));
        }
        if (!row.empty()) lp.problem.add_row(std::move(row), RowSense::LE, cap);
      }
      for (int j = 0; j < n; ++j) {
        if (t < lp.release_cell[j]) continue;
        std::vector<std::pair<int, Rat>> row;
        for (size_t k = 0; k < lp.eligible[j].size(); ++k)
          row.emplace_back(lp.var_index(j, t, static_cast<int>(k)), Rat(1));
        lp.problem.add_row(std::move(row), RowSense::LE, cap);
      }
    } else {
      for (const auto& packRow : packRows) {
        std::vector<std::pair<int, Rat>> row;
        for (int j = 0; j < n; ++j) {
          if (t < lp.release_cell[j] || packRow[j] == 0) continue;
          row.emplace_back(lp.var_index(j, t), packRow[j]);
        }
        if (!row.empty()) lp.problem.add_row(std::move(row), RowSense::LE, cap);
      }
    }
  }
  return lp;
}

IntervalLp build_interval_indexed(const Instance& ins, const Rat& eps, const Rat& delta) {
  if (eps <= 0 || delta <= 0) throw ParseError("interval LP needs positive eps and delta");
  validate_instance(ins);
  const int n = ins.n();
  const std::vector<std::vector<Rat>> rows = packing_row_family(ins);
  const std::vector<Rat> rho = alone_coefficients(rows, n);

  IntervalLp lp;
  lp.eps = eps;
  lp.delta = delta;
  Rat tail = 0;
  for (int j = 0; j < n; ++j) {
    lp.shifted_release.push_back(ins.jobs[j].r + delta);
    tail = rat_max(tail, lp.shifted_release[j]);
  }
  for (int j = 0; j < n; ++j) tail += ins.jobs[j].p * rho[j];

  lp.boundaries.push_back(delta);
  while (lp.boundaries.back() < tail) {
    if (static_cast<int>(lp.boundaries.size()) > kMaxIntervals)
      throw SolverError("interval grid too large");
    lp.boundaries.push_back(lp.boundaries.back() * (1 + eps));
  }
  const int L = static_cast<int>(lp.boundaries.size()) - 1;

  lp.var_of.assign(n, std::vector<int>(L + 1, -1));
  for (int j = 0; j < n; ++j) {
    const Rat wp = ins.jobs[j].w / ins.jobs[j].p;
    for (int l = 1; l <= L; ++l) {
      if (lp.boundaries[l - 1] < lp.shifted_release[j]) continue;
      const Rat len = lp.boundaries[l] - lp.boundaries[l - 1];
      lp.var_of[j][l] = lp.problem.add_var(wp * len * lp.boundaries[l - 1]);
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, Rat>> cov;
    for (int l = 1; l <= L; ++l)
      if (lp.var_of[j][l] >= 0)
        cov.emplace_back(lp.var_of[j][l], lp.boundaries[l] - lp.boundaries[l - 1]);
    if (cov.empty()) throw SolverError("job has no eligible interval");
    lp.problem.add_row(std::move(cov), RowSense::GE, ins.jobs[j].p);
  }
  for (int l = 1; l <= L; ++l) {
    for (const auto& packRow : rows) {
      std::vector<std::pair<int, Rat>> row;
      for (int j = 0; j < n; ++j)
        if (lp.var_of[j][l] >= 0 && packRow[j] != 0) row.emplace_back(lp.var_of[j][l], packRow[j]);
      if (!row.empty()) lp.problem.add_row(std::move(row), RowSense::LE, Rat(1));
    }
  }
  return lp;
}

RoundedSample alpha_point_round_fixed(const Instance& ins, const IntervalLp& lp,
                                      const LpSolution& sol, const Rat& alpha) {
  if (alpha <= 0 || alpha > 1) throw ParseError("alpha must lie in (0,1]");
  if (sol.status != LpStatus::Optimal) throw SolverError("interval LP solution is not optimal");
  const int n = ins.n();
  const int L = static_cast<int>(lp.boundaries.size()) - 1;

  RoundedSample out;
  out.alpha = alpha;

  // C_j(alpha): left endpoint of the first interval where the covered
  // fraction reaches alpha.
  std::vector<Rat> calpha(n);
  for (int j = 0; j < n; ++j) {
    Rat got = 0;
    int lj = -1;
    for (int l = 1; l <= L && lj < 0; ++l) {
      if (lp.var_of[j][l] < 0) continue;
      got += sol.x[lp.var_of[j][l]] * (lp.boundaries[l] - lp.boundaries[l - 1]) / ins.jobs[j].p;
      if (got >= alpha) lj = l;
    }
    if (lj < 0) throw SolverError("rounding found an uncovered job");
    calpha[j] = lp.boundaries[lj - 1];
  }

  Schedule sch;
  sch.completion.assign(n, Rat(0));
  std::vector<Rat> rem(n);
  for (int j = 0; j < n; ++j) rem[j] = ins.jobs[j].p;
  int left = n;
  for (int l = 1; l <= L && left > 0; ++l) {
    Rat t = lp.boundaries[l - 1] / alpha;
    const Rat end = lp.boundaries[l] / alpha;
    std::vector<Rat> rate(n, Rat(0));
    for (int j = 0; j < n; ++j)
      if (rem[j] > 0 && lp.var_of[j][l] >= 0) rate[j] = sol.x[lp.var_of[j][l]];
    while (t < end) {
      Rat stop = end;
      for (int j = 0; j < n; ++j)
        if (rate[j] > 0) stop = rat_min(stop, t + rem[j] / rate[j]);
      RatePiece piece;
      piece.t0 = t;
      piece.t1 = stop;
      piece.y = rate;
      for (int j = 0; j < n; ++j) {
        if (rate[j] == 0) continue;
        rem[j] -= rate[j] * (stop - t);
        if (rem[j] == 0) {
          sch.completion[j] = stop;
          rate[j] = 0;
          --left;
        }
      }
      sch.pieces.push_back(std::move(piece));
      t = stop;
    }
  }
  if (left > 0) throw SolverError("rounded schedule left work unfinished");

  sch.objective = weighted_completion_objective(ins, sch.completion);
  out.cert_bound = 0;
  out.within_bound = true;
  for (int j = 0; j < n; ++j) {
    const Rat bound = (1 + lp.eps) * calpha[j] / alpha;
    out.cert_bound += ins.jobs[j].w * bound;
    if (sch.completion[j] > bound) out.within_bound = false;
  }
  out.schedule = std::move(sch);
  return out;
}

RoundedSample alpha_point_round(const Instance& ins, const IntervalLp& lp, const LpSolution& sol,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Int grid = Int(1) << 30;
  const Int k = Int(static_cast<unsigned long>(rng() >> 34)) + 1;
  Int root;
  mpz_sqrt(root.get_mpz_t(), Int(k * grid).get_mpz_t());
  return alpha_point_round_fixed(ins, lp, sol, make_rat(root, grid));
}

Rat beta_value(const std::vector<BetaSegment>& row, const Int& t) {
  for (const auto& seg : row)
    if (t >= seg.t0 && t < seg.t1) return seg.c0 + seg.c1 * Rat(t);
  return Rat(0);
}

Rat beta_row_total(const std::vector<BetaSegment>& row) {
  Rat total = 0;
  for (const auto& seg : row) {
    if (seg.t1 <= seg.t0) continue;
    const Int len = seg.t1 - seg.t0;
    total += Rat(len) * seg.c0 + seg.c1 * Rat(len * (seg.t0 + seg.t1 - 1)) / 2;
  }
  return total;
}

namespace {

void collect_candidates(const std::vector<BetaSegment>& row, const Int& lo, std::set<Int>& out,
                        Int& coverage_end) {
  for (const auto& seg : row) {
    if (seg.t1 <= seg.t0) continue;
    for (const Int& c : {seg.t0, Int(seg.t1 - 1), seg.t1})
      if (c >= lo) out.insert(c);
    coverage_end = std::max(coverage_end, Int(seg.t1));
  }
}

}  // namespace

DualCheckReport dual_constraint_check(const Instance& ins, const Rat& kappa,
                                      const DualTables& tab) {
  const int n = ins.n();
  if (static_cast<int>(tab.alpha.size()) != n) throw SolverError("alpha size mismatch");
  const bool packing_form = !tab.rows.empty();
  if (packing_form) {
    if (tab.rows.size() != tab.beta.size()) throw SolverError("beta rows do not match row family");
  } else if (static_cast<int>(tab.beta.size()) != ins.machines() + n) {
    throw SolverError("assignment form needs m + n beta rows");
  }

  DualCheckReport rep;
  rep.sum_alpha = rep.sum_beta = 0;
  for (const Rat& a : tab.alpha) rep.sum_alpha += a;
  for (const auto& row : tab.beta) rep.sum_beta += beta_row_total(row);
  rep.objective = rep.sum_alpha - rep.sum_beta;

  bool any = false;
  Rat maxv = 0;
  const auto consider = [&](int j, int machine, const Int& t, const Rat& viol) {
    if (!any || viol > maxv) {
      maxv = viol;
      rep.worst = DualCheckWitness{j, machine, t, viol};
      any = true;
    }
  };

  for (int j = 0; j < n; ++j) {
    const Rat pS = ins.jobs[j].p * Rat(tab.scale);
    const Rat A = tab.alpha[j] / pS;
    const Rat B = ins.jobs[j].w / pS;
    const Int lo = release_cell_of(ins.jobs[j].r, tab.scale);
    const Rat norm = B * Rat(tab.scale);

    if (packing_form) {
      std::set<Int> cells{lo};
      Int cover = lo;
      for (size_t d = 0; d < tab.rows.size(); ++d)
        if (tab.rows[d][j] != 0) collect_candidates(tab.beta[d], lo, cells, cover);
      cells.insert(cover);
      for (const Int& t : cells) {
        Rat rhs = 0;
        for (size_t d = 0; d < tab.rows.size(); ++d)
          if (tab.rows[d][j] != 0) rhs += tab.rows[d][j] * beta_value(tab.beta[d], t);
        const Rat lhs = A - B * (Rat(t) + Rat(1, 2));
        consider(j, -1, t, (lhs - kappa * rhs) / norm);
      }
    } else {
      for (int i = 0; i < ins.machines(); ++i) {
        const Rat s = ins.speed(i, j);
        if (s == 0) continue;
        std::set<Int> cells{lo};
        Int cover = lo;
        collect_candidates(tab.beta[i], lo, cells, cover);
        collect_candidates(tab.beta[ins.machines() + j], lo, cells, cover);
        cells.insert(cover);
        for (const Int& t : cells) {
          const Rat rhs =
              beta_value(tab.beta[i], t) + beta_value(tab.beta[ins.machines() + j], t);
          const Rat lhs = s * (A - B * (Rat(t) + Rat(1, 2)));
          consider(j, i, t, (lhs - kappa * rhs) / (s * norm));
        }
      }
    }
  }
  rep.max_violation = any ? maxv : Rat(0);
  rep.feasible = rep.max_violation <= 0;
  return rep;
}

}  // namespace pfsched
