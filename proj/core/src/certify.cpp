#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pfsched/certify.hpp"
#include "pfsched/egsolve.hpp"

namespace pfsched {
namespace {

Int to_cell(const Rat& v, const Int& scale) {
  const Rat s = v * Rat(scale);
  if (s.get_den() != 1) throw SolverError("time does not align with the cell grid");
  return s.get_num();
}

Int timeline_scale(const Instance& ins, const EventTimeline& tl) {
  std::vector<Rat> vals;
  for (const auto& sl : tl.slices) {
    vals.push_back(sl.t0);
    vals.push_back(sl.t1);
  }
  for (const Rat& c : tl.completion) vals.push_back(c);
  for (const auto& jb : ins.jobs) vals.push_back(jb.r);
  return denominator_lcm(vals);
}

struct IntervalRun {
  Int a, b;
  int slice;  // -1 for the stub before the first slice
};

std::vector<IntervalRun> scaled_intervals(const EventTimeline& tl, const Int& M) {
  std::vector<IntervalRun> out;
  if (tl.slices.empty()) return out;
  const Int first = to_cell(tl.slices.front().t0, M);
  if (first > 0) out.push_back({Int(0), first, -1});
  for (size_t i = 0; i < tl.slices.size(); ++i) {
    const Int a = to_cell(tl.slices[i].t0, M);
    const Int b = to_cell(tl.slices[i].t1, M);
    if (b > a) out.push_back({a, b, static_cast<int>(i)});
  }
  return out;
}

bool packing_rows_kind(const Instance& ins) {
  return ins.model.kind == ModelKind::Packing || ins.model.kind == ModelKind::Single;
}

void push_segment(std::vector<BetaSegment>& row, const Int& a, const Int& b, const Rat& c0,
                  const Rat& c1) {
  if (b <= a) return;
  if (c0 == 0 && c1 == 0) return;
  row.push_back({a, b, c0, c1});
}

Rat sum_of(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const Rat& x : v) s += x;
  return s;
}

void finish_objective(DualCertificate& cert) {
  Rat beta = 0;
  for (const auto& row : cert.tables.beta) beta += beta_row_total(row);
  cert.dual_objective = sum_of(cert.tables.alpha) - beta;
}

// Hypothetical CP(U) multipliers for one interval. For assignment models the
// recovery is floored by the per-interval covering bound
// s_ij w_j (C'_j - a) / p'_j on released jobs, which makes the dual constraint
// hold exactly on every cell of the interval whether or not the frozen rates
// are perfectly monotone.
struct IntervalDuals {
  std::vector<Rat> y;      // full length
  std::vector<Rat> eta;    // rows or machines
  std::vector<Rat> delta;  // full length, assignment models
};

IntervalDuals hypothetical_duals(const Instance& ins, const std::vector<int>& U,
                                 SolverChoice solver, double tol, const Int& a, const Int& M,
                                 const std::vector<Int>& Cs) {
  IntervalDuals out;
  const int n = ins.n();
  const bool wantUnrelated =
      ins.model.kind == ModelKind::Unrelated || solver == SolverChoice::Unrelated;
  if (!wantUnrelated) {
    RateSolution sol = pf_rates_hypothetical(ins, U, solver, tol);
    if (sol.eta.empty()) throw SolverError("solver route returned no row multipliers");
    out.y = std::move(sol.y);
    out.eta = std::move(sol.eta);
    out.delta = sol.delta.empty() ? std::vector<Rat>(n, Rat(0)) : std::move(sol.delta);
    return out;
  }

  const int m = ins.machines();
  const int k = static_cast<int>(U.size());
  std::vector<std::vector<Rat>> s(m, std::vector<Rat>(k));
  std::vector<Rat> w(k);
  for (int c = 0; c < k; ++c) {
    w[c] = ins.jobs[U[c]].w;
    for (int i = 0; i < m; ++i) s[i][c] = ins.speed(i, U[c]);
  }
  RateSolution sub = solve_eg_unrelated(s, w, tol);
  std::vector<std::vector<Rat>> floor(m, std::vector<Rat>(k, Rat(0)));
  for (int c = 0; c < k; ++c) {
    const int j = U[c];
    if (Rat(a) < ins.jobs[j].r * Rat(M)) continue;  // no constraint cells yet
    const Rat coeff = ins.jobs[j].w * Rat(Cs[j] - a) / (ins.jobs[j].p * Rat(M));
    for (int i = 0; i < m; ++i) floor[i][c] = s[i][c] * coeff;
  }
  auto [eta, delta] =
      recover_multipliers_assignment(s, w, sub.y, sub.x, std::max(1e-6, 100 * tol), &floor);
  out.eta = std::move(eta);
  out.y.assign(n, Rat(0));
  out.delta.assign(n, Rat(0));
  for (int c = 0; c < k; ++c) {
    out.y[U[c]] = sub.y[c];
    out.delta[U[c]] = delta[c];
  }
  return out;
}

}  // namespace

std::string certificate_kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::MonPsp:
      return "monpsp";
    case CertificateKind::Structured:
      return "structured";
    case CertificateKind::GeneralPsp:
      return "general";
    case CertificateKind::WrrTight:
      return "wrr";
  }
  return "monpsp";
}

CertificateKind certificate_kind_from_name(const std::string& s) {
  if (s == "monpsp") return CertificateKind::MonPsp;
  if (s == "structured") return CertificateKind::Structured;
  if (s == "general") return CertificateKind::GeneralPsp;
  if (s == "wrr") return CertificateKind::WrrTight;
  throw ParseError("unknown certificate kind: " + s);
}

DualCertificate monpsp_certificate(const Instance& ins, const EventTimeline& tl,
                                   SolverChoice solver, const Rat& kappa, double tol) {
  if (kappa <= 1) throw ParseError("monpsp certificate needs kappa > 1");
  const int n = ins.n();

  DualCertificate cert;
  cert.kind = CertificateKind::MonPsp;
  cert.kappa = kappa;
  cert.guarantee = kappa * kappa / (kappa - 1);
  const Int M = timeline_scale(ins, tl);
  cert.tables.scale = M;
  const bool packing = packing_rows_kind(ins);
  if (packing)
    cert.tables.rows = ins.model.kind == ModelKind::Packing
                           ? ins.model.rows
                           : std::vector<std::vector<Rat>>{std::vector<Rat>(n, Rat(1))};
  const int nrows =
      packing ? static_cast<int>(cert.tables.rows.size()) : ins.machines() + n;
  cert.tables.beta.assign(nrows, {});
  cert.tables.alpha.assign(n, Rat(0));
  cert.alg_scaled = 0;

  std::vector<Int> Cs(n);
  for (int j = 0; j < n; ++j) {
    Cs[j] = to_cell(tl.completion[j], M);
    cert.tables.alpha[j] = ins.jobs[j].w * Rat(Cs[j]);
    cert.alg_scaled += cert.tables.alpha[j];
  }

  std::vector<int> unfinished(n);
  for (int j = 0; j < n; ++j) unfinished[j] = j;
  std::vector<int> solvedFor;
  IntervalDuals duals;
  bool have = false;

  for (const auto& run : scaled_intervals(tl, M)) {
    if (!have || unfinished != solvedFor) {
      duals = hypothetical_duals(ins, unfinished, solver, tol, run.a, M, Cs);
      solvedFor = unfinished;
      have = true;
    }
    if (run.slice >= 0) {
      const auto& sl = tl.slices[run.slice];
      for (int j : unfinished) {
        if (Rat(run.a) < ins.jobs[j].r * Rat(M)) continue;
        const Rat actual = sl.rates.y[j];
        // Frozen floating solves put rate noise near sqrt(gap); the gate has
        // to out-tolerate that noise or exact ties across solves false-fire.
        const Rat slack = rat_exact(tol + 64.0 * std::sqrt(tol));
        if (duals.y[j] > actual + slack * (1 + rat_abs(actual)))
          throw SolverError("rate monotonicity fails: job " + std::to_string(j) + " at t=" +
                            rat_str(sl.t0) + ", hypothetical " + rat_str(duals.y[j]) +
                            " > actual " + rat_str(actual));
      }
    }
    if (packing) {
      for (int d = 0; d < nrows; ++d)
        push_segment(cert.tables.beta[d], run.a, run.b, duals.eta[d] / kappa, Rat(0));
    } else {
      for (int i = 0; i < ins.machines(); ++i)
        push_segment(cert.tables.beta[i], run.a, run.b, duals.eta[i] / kappa, Rat(0));
      for (int j : unfinished)
        push_segment(cert.tables.beta[ins.machines() + j], run.a, run.b, duals.delta[j] / kappa,
                     Rat(0));
    }
    unfinished.erase(
        std::remove_if(unfinished.begin(), unfinished.end(), [&](int j) { return Cs[j] == run.b; }),
        unfinished.end());
  }
  finish_objective(cert);
  return cert;
}

DualCertificate structured_certificate(const Instance& ins, const EventTimeline& tl) {
  const int n = ins.n();
  if (n == 0 || tl.slices.empty()) throw SolverError("structured certificate needs jobs");
  for (const auto& jb : ins.jobs)
    if (jb.r != 0) throw SolverError("structured certificate needs release at time zero");
  if (tl.slices.size() != 1)
    throw SolverError("structured certificate needs a single event interval");
  for (int j = 1; j < n; ++j)
    if (tl.completion[j] != tl.completion[0])
      throw SolverError("structured certificate needs a common completion");

  DualCertificate cert;
  cert.kind = CertificateKind::Structured;
  cert.kappa = 1;
  cert.guarantee = 2;
  const Rat C = tl.completion[0];
  const Int M = denominator_lcm({C});
  cert.tables.scale = M;
  const Int Cp = to_cell(C, M);
  const Rat CpR = Rat(Cp);
  const auto& sol = tl.slices[0].rates;

  const bool packing = packing_rows_kind(ins);
  if (packing)
    cert.tables.rows = ins.model.kind == ModelKind::Packing
                           ? ins.model.rows
                           : std::vector<std::vector<Rat>>{std::vector<Rat>(n, Rat(1))};
  const int nrows =
      packing ? static_cast<int>(cert.tables.rows.size()) : ins.machines() + n;
  cert.tables.beta.assign(nrows, {});

  // (1 - (t+1/2)/C) * g on cells 0..C-1.
  const auto shaped = [&](std::vector<BetaSegment>& row, const Rat& g) {
    push_segment(row, Int(0), Cp, g - g / (2 * CpR), -g / CpR);
  };
  if (packing) {
    if (static_cast<int>(sol.eta.size()) != nrows)
      throw SolverError("interval multipliers do not match the row family");
    for (int d = 0; d < nrows; ++d) shaped(cert.tables.beta[d], sol.eta[d]);
  } else {
    for (int i = 0; i < ins.machines(); ++i) shaped(cert.tables.beta[i], sol.eta[i]);
    for (int j = 0; j < n; ++j) shaped(cert.tables.beta[ins.machines() + j], sol.delta[j]);
  }

  cert.tables.alpha.assign(n, Rat(0));
  cert.alg_scaled = 0;
  for (int j = 0; j < n; ++j) {
    cert.tables.alpha[j] = ins.jobs[j].w * CpR;
    cert.alg_scaled += cert.tables.alpha[j];
  }
  finish_objective(cert);
  return cert;
}

DualCertificate general_psp_certificate(const Instance& ins, const EventTimeline& tl,
                                        const Rat& kappa, const Rat& lambda, double tol) {
  if (kappa < 1) throw ParseError("kappa must be at least 1");
  if (lambda <= 0 || lambda >= 1) throw ParseError("lambda must lie in (0,1)");
  const Rat margin = lambda - 1 / ((1 - lambda) * kappa);
  if (margin <= 0) throw ParseError("quantile parameters certify nothing");

  const int n = ins.n();
  DualCertificate cert;
  cert.kind = CertificateKind::GeneralPsp;
  cert.kappa = kappa;
  cert.lambda = lambda;
  cert.guarantee = kappa / margin;
  cert.tables.rows = packing_row_family(ins);
  const int D = static_cast<int>(cert.tables.rows.size());
  cert.tables.beta.assign(D, {});

  Int Lw = 1;
  for (const auto& jb : ins.jobs) Lw = lcm_int(Lw, jb.w.get_den());
  cert.weight_scale = Lw;
  std::vector<Int> wInt(n);
  for (int j = 0; j < n; ++j) wInt[j] = Rat(ins.jobs[j].w * Rat(Lw)).get_num();

  const Int M = timeline_scale(ins, tl);
  cert.tables.scale = M;
  std::vector<Int> Cs(n);
  cert.tables.alpha.assign(n, Rat(0));
  cert.alg_scaled = 0;
  for (int j = 0; j < n; ++j) {
    Cs[j] = to_cell(tl.completion[j], M);
    cert.alg_scaled += Rat(wInt[j]) * Rat(Cs[j]);
  }

  struct Cell {
    Int a, b;
    Rat zeta;
    std::vector<Rat> eta;
  };
  std::vector<Cell> cells;
  std::vector<int> unfinished(n);
  for (int j = 0; j < n; ++j) unfinished[j] = j;

  for (const auto& run : scaled_intervals(tl, M)) {
    Cell cell;
    cell.a = run.a;
    cell.b = run.b;
    cell.eta.assign(D, Rat(0));

    std::vector<Rat> rate(n, Rat(0));
    if (run.slice >= 0) {
      const auto& sl = tl.slices[run.slice];
      rate = sl.rates.y;
      if (!sl.active.empty()) {
        if (ins.model.kind == ModelKind::Packing) {
          if (static_cast<int>(sl.rates.eta.size()) != D)
            throw SolverError("slice multipliers do not match the row family");
          for (int d = 0; d < D; ++d) cell.eta[d] = sl.rates.eta[d] * Rat(Lw);
        } else {
          // Polymatroid sub-family over the alive set; rows touching a dead
          // job keep multiplier zero.
          std::vector<int> pos(n, -1);
          for (size_t c = 0; c < sl.active.size(); ++c) pos[sl.active[c]] = static_cast<int>(c);
          std::vector<std::vector<Rat>> sub;
          std::vector<int> subIdx;
          for (int d = 0; d < D; ++d) {
            std::vector<Rat> r(sl.active.size(), Rat(0));
            bool inside = true;
            for (int j = 0; j < n && inside; ++j) {
              if (cert.tables.rows[d][j] == 0) continue;
              if (pos[j] < 0)
                inside = false;
              else
                r[pos[j]] = cert.tables.rows[d][j];
            }
            if (!inside) continue;
            sub.push_back(std::move(r));
            subIdx.push_back(d);
          }
          std::vector<Rat> w(sl.active.size());
          for (size_t c = 0; c < sl.active.size(); ++c) w[c] = ins.jobs[sl.active[c]].w;
          const RateSolution s = solve_eg_packing(sub, w, tol);
          for (size_t q = 0; q < subIdx.size(); ++q) cell.eta[subIdx[q]] = s.eta[q] * Rat(Lw);
        }
      }
    }

    Int wTotal = 0;
    for (int j : unfinished) wTotal += wInt[j];
    if (wTotal <= 0) throw SolverError("empty unfinished set inside the horizon");
    const Int target = ceil_rat(lambda * Rat(wTotal));
    std::vector<std::pair<Rat, Int>> vals;
    std::vector<Rat> ratio(n, Rat(0));
    for (int j : unfinished) {
      ratio[j] = rate[j] / (ins.jobs[j].p * Rat(M));
      vals.emplace_back(ratio[j], wInt[j]);
    }
    std::sort(vals.begin(), vals.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    Int cum = 0;
    for (const auto& [v, wt] : vals) {
      cum += wt;
      if (cum >= target) {
        cell.zeta = v;
        break;
      }
    }

    const Rat len = Rat(run.b - run.a);
    for (int j : unfinished)
      if (ratio[j] <= cell.zeta) cert.tables.alpha[j] += Rat(wInt[j]) * len;

    cells.push_back(std::move(cell));
    unfinished.erase(
        std::remove_if(unfinished.begin(), unfinished.end(), [&](int j) { return Cs[j] == run.b; }),
        unfinished.end());
  }

  std::vector<Rat> suffix(D, Rat(0));
  for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
    for (int d = 0; d < D; ++d) {
      const Rat slope = it->zeta * it->eta[d];
      if (slope == 0 && suffix[d] == 0) continue;
      push_segment(cert.tables.beta[d], it->a, it->b, (suffix[d] + Rat(it->b) * slope) / kappa,
                   -slope / kappa);
      suffix[d] += Rat(it->b - it->a) * slope;
    }
  }
  for (auto& row : cert.tables.beta) std::reverse(row.begin(), row.end());
  finish_objective(cert);
  return cert;
}

DualCertificate wrr_tight_certificate(const Instance& ins) {
  if (ins.model.kind != ModelKind::Single)
    throw SolverError("tight WRR dual runs on a single machine");
  const int n = ins.n();
  for (const auto& jb : ins.jobs)
    if (jb.r != 0) throw SolverError("tight WRR dual needs release at time zero");

  DualCertificate cert;
  cert.kind = CertificateKind::WrrTight;
  cert.kappa = 1;
  cert.guarantee = 2;
  cert.tables.rows = {std::vector<Rat>(n, Rat(1))};
  cert.tables.beta.assign(1, {});
  cert.tables.alpha.assign(n, Rat(0));
  cert.alg_scaled = 0;

  Int M = 1;
  for (const auto& jb : ins.jobs) M = lcm_int(M, jb.p.get_den());
  if (M > 1000000000) throw SolverError("processing scale too large");
  cert.tables.scale = M;
  Int Lw = 1;
  for (const auto& jb : ins.jobs) Lw = lcm_int(Lw, jb.w.get_den());
  cert.weight_scale = Lw;

  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ins.jobs[a].w * ins.jobs[b].p > ins.jobs[b].w * ins.jobs[a].p;
  });

  Rat suffixW = 0;
  for (const auto& jb : ins.jobs) suffixW += jb.w * Rat(Lw);
  Int q = 0;
  for (int pos = 0; pos < n; ++pos) {
    const int j = order[pos];
    const Rat wS = ins.jobs[j].w * Rat(Lw);
    const Rat pS = ins.jobs[j].p * Rat(M);
    const Rat C = Rat(q) + pS * suffixW / wS;
    cert.tables.alpha[j] = wS * C;
    cert.alg_scaled += cert.tables.alpha[j];
    const Rat wp = wS / pS;
    push_segment(cert.tables.beta[0], q, Int(q + pS.get_num()), wp * (C - Rat(1, 2)), -wp);
    q += pS.get_num();
    suffixW -= wS;
  }
  finish_objective(cert);
  return cert;
}

CertificateVerdict verify_certificate(const Instance& ins, const DualCertificate& cert,
                                      double tol) {
  Instance view = ins;
  if (cert.weight_scale != 1)
    for (auto& jb : view.jobs) jb.w *= Rat(cert.weight_scale);

  CertificateVerdict v;
  v.ratio = cert.guarantee;
  v.alg_scaled = cert.alg_scaled;
  v.max_violation = 0;
  v.dual_objective = 0;
  v.identity_residual = 0;

  for (const Rat& a : cert.tables.alpha)
    if (a < 0) {
      v.note = "negative alpha entry";
      return v;
    }
  for (const auto& row : cert.tables.beta)
    for (const auto& seg : row) {
      if (seg.t1 <= seg.t0) continue;
      if (seg.c0 + seg.c1 * Rat(seg.t0) < 0 || seg.c0 + seg.c1 * Rat(seg.t1 - 1) < 0) {
        v.note = "negative beta entry";
        return v;
      }
    }

  const DualCheckReport rep = dual_constraint_check(view, cert.kappa, cert.tables);
  v.max_violation = rep.max_violation;
  v.worst = rep.worst;
  v.dual_objective = rep.objective;
  const Rat tolR = rat_exact(tol);
  v.feasible = rep.max_violation <= tolR;

  if (rep.objective != cert.dual_objective) {
    v.note = "stored dual objective does not match the tables";
    return v;
  }

  const Rat denom = rat_max(Rat(1), cert.alg_scaled);
  bool identity = false;
  if (cert.kind == CertificateKind::GeneralPsp) {
    const Rat margin = cert.lambda - 1 / ((1 - cert.lambda) * cert.kappa);
    v.identity_residual = rat_max(Rat(0), margin * cert.alg_scaled - rep.objective) / denom;
    identity = v.identity_residual <= tolR;
  } else {
    const Rat expected = cert.kind == CertificateKind::MonPsp
                             ? Rat((1 - 1 / cert.kappa) * cert.alg_scaled)
                             : Rat(cert.alg_scaled / 2);
    v.identity_residual = rat_abs(rep.objective - expected) / denom;
    identity = v.identity_residual <= tolR;
  }

  v.ok = v.feasible && identity;
  if (v.ok) {
    v.note = "feasible; ALG <= " + rat_str(cert.guarantee) + "*OPT";
  } else if (!v.feasible) {
    v.note = "infeasible at (job=" + std::to_string(rep.worst.job) +
             ", row=" + std::to_string(rep.worst.row) + ", t=" + rep.worst.cell.get_str() +
             "), violation " + rat_str(rep.worst.violation);
  } else {
    v.note = "objective identity fails, residual " + rat_str(v.identity_residual);
  }
  return v;
}

Rat structured_tightness_gap(const Instance& ins, const DualCertificate& cert) {
  Instance view = ins;
  if (cert.weight_scale != 1)
    for (auto& jb : view.jobs) jb.w *= Rat(cert.weight_scale);
  const int n = view.n();
  const Int M = cert.tables.scale;
  const bool packing = !cert.tables.rows.empty();

  Int horizon = 0;
  for (const auto& row : cert.tables.beta)
    for (const auto& seg : row) horizon = std::max(horizon, Int(seg.t1));

  const auto candidates = [&](const std::vector<BetaSegment>& row, std::vector<Int>& out) {
    for (const auto& seg : row)
      for (const Int& c : {seg.t0, Int(seg.t1 - 1)}) out.push_back(c);
  };

  Rat worst = 0;
  for (int j = 0; j < n; ++j) {
    const Rat pS = view.jobs[j].p * Rat(M);
    const Rat A = cert.tables.alpha[j] / pS;
    const Rat B = view.jobs[j].w / pS;
    std::vector<Int> cells;
    if (packing) {
      for (size_t d = 0; d < cert.tables.rows.size(); ++d)
        if (cert.tables.rows[d][j] != 0) candidates(cert.tables.beta[d], cells);
    } else {
      for (int i = 0; i < view.machines(); ++i)
        if (view.speed(i, j) != 0) candidates(cert.tables.beta[i], cells);
      candidates(cert.tables.beta[view.machines() + j], cells);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    for (const Int& t : cells) {
      if (t < 0 || t >= horizon) continue;
      const Rat lhs = A - B * (Rat(t) + Rat(1, 2));
      Rat slack;
      if (packing) {
        Rat rhs = 0;
        for (size_t d = 0; d < cert.tables.rows.size(); ++d)
          if (cert.tables.rows[d][j] != 0)
            rhs += cert.tables.rows[d][j] * beta_value(cert.tables.beta[d], t);
        slack = (cert.kappa * rhs - lhs) / (B * Rat(M));
      } else {
        bool first = true;
        slack = 0;
        for (int i = 0; i < view.machines(); ++i) {
          const Rat s = view.speed(i, j);
          if (s == 0) continue;
          const Rat rhs = beta_value(cert.tables.beta[i], t) +
                          beta_value(cert.tables.beta[view.machines() + j], t);
          const Rat gap = (cert.kappa * rhs - s * lhs) / (s * B * Rat(M));
          if (first || gap < slack) slack = gap;
          first = false;
        }
      }
      worst = rat_max(worst, rat_abs(slack));
    }
  }
  return worst;
}

}  // namespace pfsched
