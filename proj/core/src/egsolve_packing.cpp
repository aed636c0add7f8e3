#include <cmath>
#include <limits>
#include <vector>

#include "pfsched/egsolve.hpp"

namespace pfsched {
namespace {

// Dual of CP over eta >= 0: g(eta) = sum_d eta_d - sum_j w_j log(c_j), with
// c_j = sum_d b_dj eta_d. Smooth on the region where all c_j > 0; the primal
// reads back as y_j = w_j / c_j.
struct DualEval {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> cost;  // c_j per job
};

DualEval eval_dual(const std::vector<std::vector<double>>& b, const std::vector<double>& w,
                   const std::vector<double>& eta) {
  const int d = static_cast<int>(b.size());
  const int n = static_cast<int>(w.size());
  DualEval e;
  e.cost.assign(n, 0.0);
  for (int r = 0; r < d; ++r) {
    if (eta[r] == 0) continue;
    for (int j = 0; j < n; ++j) e.cost[j] += b[r][j] * eta[r];
  }
  double v = 0.0;
  for (int r = 0; r < d; ++r) v += eta[r];
  for (int j = 0; j < n; ++j) {
    if (e.cost[j] <= 0) return e;  // value stays +inf
    v -= w[j] * std::log(e.cost[j]);
  }
  e.value = v;
  return e;
}

}  // namespace

RateSolution solve_eg_packing(const std::vector<std::vector<Rat>>& rows,
                              const std::vector<Rat>& w, double tol, long max_iters) {
  const int d = static_cast<int>(rows.size());
  const int n = static_cast<int>(w.size());
  if (d == 0) throw SolverError("empty packing matrix");
  std::vector<std::vector<double>> b(d, std::vector<double>(n));
  std::vector<double> wd(n);
  double wsum = 0.0;
  for (int j = 0; j < n; ++j) {
    wd[j] = rat_dbl(w[j]);
    if (wd[j] <= 0) throw SolverError("weights must be positive");
    wsum += wd[j];
  }
  for (int r = 0; r < d; ++r)
    for (int j = 0; j < n; ++j) {
      b[r][j] = rat_dbl(rows[r][j]);
      if (b[r][j] < 0) throw SolverError("packing coefficients must be nonnegative");
    }
  for (int j = 0; j < n; ++j) {
    bool covered = false;
    for (int r = 0; r < d; ++r) covered = covered || b[r][j] > 0;
    if (!covered) throw SolverError("job absent from every packing row");
  }

  std::vector<double> eta(d, wsum / d);
  DualEval cur = eval_dual(b, wd, eta);
  if (!std::isfinite(cur.value)) {
    // Uniform start can zero out a job's cost only if some rows are all-zero
    // on this subset; perturb those away.
    for (int r = 0; r < d; ++r) eta[r] = std::max(eta[r], 1e-9);
    cur = eval_dual(b, wd, eta);
  }
  if (!std::isfinite(cur.value)) throw SolverError("no interior dual start");

  // Residual mixes primal feasibility and complementary slackness; the
  // stationarity condition w_j / y_j = c_j holds by construction of y.
  const auto residual_of = [&](const std::vector<double>& e, const std::vector<double>& cost,
                               std::vector<double>& g) {
    double res = 0.0;
    for (int r = 0; r < d; ++r) {
      double l = 0.0;
      for (int j = 0; j < n; ++j) l += b[r][j] * wd[j] / cost[j];
      g[r] = 1.0 - l;
      res = std::max(res, l - 1.0);
      res = std::max(res, e[r] * std::fabs(1.0 - l) / std::max(1.0, wsum));
    }
    return res;
  };

  // Newton on the working set of positive multipliers. Close to the optimum
  // the dual value flattens below double resolution, so acceptance there is
  // by residual decrease; a value Armijo test drives the global phase.
  std::vector<double> grad(d), gradT(d), trial(d), dcost(n);
  std::vector<char> working(d, 1);
  double residual = residual_of(eta, cur.cost, grad);
  for (long it = 0; it < max_iters && residual > tol; ++it) {
    for (int r = 0; r < d; ++r)
      if (!working[r] && grad[r] < 0) working[r] = 1;
    std::vector<int> act;
    for (int r = 0; r < d; ++r)
      if (working[r]) act.push_back(r);
    if (act.empty()) {
      std::fill(working.begin(), working.end(), 1);
      continue;
    }
    const int k = static_cast<int>(act.size());

    std::vector<double> H(static_cast<std::size_t>(k) * k, 0.0);
    for (int a = 0; a < k; ++a)
      for (int c = a; c < k; ++c) {
        double h = 0.0;
        for (int j = 0; j < n; ++j) {
          const double bb = b[act[a]][j] * b[act[c]][j];
          if (bb != 0) h += wd[j] * bb / (cur.cost[j] * cur.cost[j]);
        }
        H[static_cast<std::size_t>(a) * k + c] = H[static_cast<std::size_t>(c) * k + a] = h;
      }
    double diag = 0.0;
    for (int a = 0; a < k; ++a) diag = std::max(diag, H[static_cast<std::size_t>(a) * k + a]);
    const double ridge = diag * 1e-13 + 1e-300;

    // Rows re-entering at zero move by their own curvature so the Newton
    // block cannot push them back out; the full system runs on the interior
    // rows only.
    std::vector<int> freeIdx;
    std::vector<double> delta(k, 0.0);
    for (int a = 0; a < k; ++a) {
      if (eta[act[a]] > 0)
        freeIdx.push_back(a);
      else
        delta[a] = -grad[act[a]] /
                   std::max(H[static_cast<std::size_t>(a) * k + a] + ridge, 1e-300);
    }
    const int kf = static_cast<int>(freeIdx.size());
    bool solved = kf > 0;
    if (kf > 0) {
      std::vector<double> Hf(static_cast<std::size_t>(kf) * kf), rhs(kf);
      for (int a = 0; a < kf; ++a) {
        rhs[a] = -grad[act[freeIdx[a]]];
        for (int c = 0; c < kf; ++c)
          Hf[static_cast<std::size_t>(a) * kf + c] =
              H[static_cast<std::size_t>(freeIdx[a]) * k + freeIdx[c]];
        Hf[static_cast<std::size_t>(a) * kf + a] += ridge;
      }
      // Elimination with partial pivoting; duplicated rows leave the system
      // near-singular and fall through to the diagonal direction.
      for (int col = 0; col < kf && solved; ++col) {
        int piv = col;
        for (int a = col + 1; a < kf; ++a)
          if (std::fabs(Hf[static_cast<std::size_t>(a) * kf + col]) >
              std::fabs(Hf[static_cast<std::size_t>(piv) * kf + col]))
            piv = a;
        if (piv != col) {
          for (int c = 0; c < kf; ++c)
            std::swap(Hf[static_cast<std::size_t>(col) * kf + c],
                      Hf[static_cast<std::size_t>(piv) * kf + c]);
          std::swap(rhs[col], rhs[piv]);
        }
        const double p = Hf[static_cast<std::size_t>(col) * kf + col];
        if (!(std::fabs(p) > diag * 1e-15)) {
          solved = false;
          break;
        }
        for (int a = col + 1; a < kf; ++a) {
          const double f = Hf[static_cast<std::size_t>(a) * kf + col] / p;
          if (f == 0) continue;
          for (int c = col; c < kf; ++c)
            Hf[static_cast<std::size_t>(a) * kf + c] -=
                f * Hf[static_cast<std::size_t>(col) * kf + c];
          rhs[a] -= f * rhs[col];
        }
      }
      if (solved) {
        for (int col = kf - 1; col >= 0; --col) {
          for (int c = col + 1; c < kf; ++c)
            rhs[col] -= Hf[static_cast<std::size_t>(col) * kf + c] * rhs[c];
          rhs[col] /= Hf[static_cast<std::size_t>(col) * kf + col];
        }
        for (int a = 0; a < kf; ++a) delta[freeIdx[a]] = rhs[a];
      }
    }

    const auto fill_diagonal = [&]() {
      for (int a = 0; a < k; ++a)
        delta[a] = -grad[act[a]] /
                   std::max(H[static_cast<std::size_t>(a) * k + a] + ridge, 1e-300);
    };
    if (!solved) fill_diagonal();

    // Step to the first interior multiplier hitting zero is allowed exactly;
    // costs must stay strictly positive.
    const auto try_direction = [&]() {
      double tmax = 1.0;
      for (int a = 0; a < k; ++a)
        if (delta[a] < 0) tmax = std::min(tmax, -eta[act[a]] / delta[a]);
      std::fill(dcost.begin(), dcost.end(), 0.0);
      for (int a = 0; a < k; ++a) {
        if (delta[a] == 0) continue;
        for (int j = 0; j < n; ++j) dcost[j] += b[act[a]][j] * delta[a];
      }
      for (int j = 0; j < n; ++j)
        if (dcost[j] < 0) tmax = std::min(tmax, 0.95 * (-cur.cost[j] / dcost[j]));

      double t = tmax;
      for (int bt = 0; bt < 60 && t > 0; ++bt, t *= 0.5) {
        trial = eta;
        double decrease = 0.0;
        for (int a = 0; a < k; ++a) {
          trial[act[a]] = std::max(0.0, eta[act[a]] + t * delta[a]);
          decrease += grad[act[a]] * (trial[act[a]] - eta[act[a]]);
        }
        DualEval nxt = eval_dual(b, wd, trial);
        if (!std::isfinite(nxt.value)) continue;
        const double resT = residual_of(trial, nxt.cost, gradT);
        if (resT <= tol || resT <= 0.7 * residual ||
            nxt.value <= cur.value + 0.25 * decrease) {
          eta.swap(trial);
          cur = std::move(nxt);
          grad.swap(gradT);
          residual = resT;
          return true;
        }
      }
      return false;
    };

    bool accepted = try_direction();
    if (!accepted && solved) {
      fill_diagonal();
      accepted = try_direction();
    }
    if (!accepted) throw SolverError("line search underflow in packing solver");
    for (int r = 0; r < d; ++r)
      if (eta[r] == 0) working[r] = 0;
  }
  if (residual > tol) throw SolverError("packing solver hit the iteration cap");

  RateSolution sol;
  sol.exact = false;
  sol.gap = residual;
  sol.y.reserve(n);
  sol.eta.reserve(d);
  for (int j = 0; j < n; ++j) sol.y.push_back(w[j] / rat_exact(cur.cost[j]));
  for (int r = 0; r < d; ++r) sol.eta.push_back(rat_exact(eta[r]));
  return sol;
}

}  // namespace pfsched
