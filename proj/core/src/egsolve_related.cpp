#include <algorithm>
#include <utility>
#include <vector>

#include "pfsched/egsolve.hpp"

namespace pfsched {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw SolverError(msg);
}

struct Slot {
  Rat speed;
  std::vector<std::pair<int, Rat>> atoms;  // (real machine, share of its horizon)
};

}  // namespace

std::vector<std::vector<Rat>> level_allocation(const std::vector<Rat>& y,
                                               const std::vector<Rat>& s) {
  const int n = static_cast<int>(y.size());
  const int m = static_cast<int>(s.size());
  for (int j = 0; j + 1 < n; ++j) require(y[j] >= y[j + 1], "rates must be non-increasing");
  for (int i = 0; i + 1 < m; ++i) require(s[i] >= s[i + 1], "speeds must be non-increasing");
  Rat ysum = 0, ssum = 0;
  for (int k = 0; k < std::max(n, m); ++k) {
    if (k < n) {
      require(y[k] >= 0, "rates must be nonnegative");
      ysum += y[k];
    }
    if (k < m) {
      require(s[k] >= 0, "speeds must be nonnegative");
      ssum += s[k];
    }
    require(ysum <= ssum, "prefix of rates exceeds prefix of speeds");
  }
  require(ysum == ssum, "total rate must equal total speed");

  std::vector<std::vector<Rat>> x(m, std::vector<Rat>(n, Rat(0)));
  std::vector<Slot> slots;
  for (int i = 0; i < m; ++i) slots.push_back({s[i], {{i, Rat(1)}}});

  for (int j = 0; j < n; ++j) {
    if (y[j] == 0) continue;
    int k = -1;
    for (int t = 0; t < static_cast<int>(slots.size()); ++t) {
      if (slots[t].speed >= y[j]) k = t;
    }
    require(k >= 0, "rate exceeds fastest remaining slot");
    if (slots[k].speed == y[j]) {
      for (const auto& [id, frac] : slots[k].atoms) x[id][j] += frac;
      slots.erase(slots.begin() + k);
      continue;
    }
    // Split between slot k and the next slower slot (virtual zero past the end),
    // then merge the leftovers into one composite slot of speed s_k + s_k1 - y_j.
    const bool havePartner = k + 1 < static_cast<int>(slots.size());
    const Rat sk = slots[k].speed;
    const Rat sk1 = havePartner ? slots[k + 1].speed : Rat(0);
    const Rat tau = (y[j] - sk1) / (sk - sk1);
    Slot merged;
    merged.speed = sk + sk1 - y[j];
    for (const auto& [id, frac] : slots[k].atoms) {
      x[id][j] += frac * tau;
      if (tau < 1) merged.atoms.emplace_back(id, frac * (1 - tau));
    }
    if (havePartner) {
      for (const auto& [id, frac] : slots[k + 1].atoms) {
        x[id][j] += frac * (1 - tau);
        if (tau > 0) merged.atoms.emplace_back(id, frac * tau);
      }
      slots.erase(slots.begin() + k + 1);
    }
    slots[k] = std::move(merged);
  }

  for (const Slot& sl : slots) require(sl.speed == 0, "unused capacity after allocation");
  return x;
}

std::pair<RateSolution, LevelDecomposition> solve_eg_related(const std::vector<Rat>& speeds,
                                                             const std::vector<Rat>& weights) {
  const int n = static_cast<int>(weights.size());
  const int m = static_cast<int>(speeds.size());
  require(m > 0, "no machines");
  for (int i = 0; i < m; ++i) {
    require(speeds[i] >= 0, "speeds must be nonnegative");
    if (i + 1 < m) require(speeds[i] >= speeds[i + 1], "speeds must be non-increasing");
  }
  for (int j = 0; j < n; ++j) {
    require(weights[j] > 0, "weights must be positive");
    if (j + 1 < n) require(weights[j] >= weights[j + 1], "weights must be non-increasing");
  }

  RateSolution sol;
  sol.exact = true;
  sol.eta.assign(m, Rat(0));
  LevelDecomposition dec;
  for (int j = 0; j < n; ++j) dec.order.push_back(j);
  if (n == 0) return {sol, dec};
  require(speeds[0] > 0, "fastest machine has zero speed");

  const int K = std::max(n, m);
  std::vector<Rat> spad(K + 1, Rat(0));
  for (int i = 0; i < m; ++i) spad[i] = speeds[i];

  // Greedy level construction: from position k, close the level at the largest
  // h maximizing (w_k+..+w_h)/(s_k+..+s_h). Maximality of the previous level
  // keeps every level's capacity positive and the prices strictly decreasing.
  int k = 0;
  while (k < n) {
    Rat W = 0, S = 0, bestRatio = 0;
    int bestH = -1;
    for (int h = k; h < n; ++h) {
      W += weights[h];
      S += spad[h];
      if (S == 0) continue;
      const Rat ratio = W / S;
      if (bestH < 0 || ratio >= bestRatio) {
        bestRatio = ratio;
        bestH = h;
      }
    }
    require(bestH >= 0, "level with zero capacity");
    if (!dec.levels.empty()) require(bestRatio < dec.levels.back().price, "prices not decreasing");
    dec.levels.push_back({k, bestH, bestRatio});
    k = bestH + 1;
  }

  sol.y.assign(n, Rat(0));
  std::vector<Rat> pi(K, Rat(0));
  for (const Level& lv : dec.levels) {
    for (int j = lv.first; j <= lv.last; ++j) {
      sol.y[j] = weights[j] / lv.price;
      pi[j] = lv.price;
    }
  }

  std::vector<Rat> eta(K + 1, Rat(0));
  for (int i = K - 1; i >= 0; --i) eta[i] = eta[i + 1] + pi[i] * (spad[i] - spad[i + 1]);
  sol.delta.assign(n, Rat(0));
  for (int j = 0; j < n; ++j) {
    sol.delta[j] = pi[j] * spad[j] - eta[j];
    require(sol.delta[j] >= 0, "negative job multiplier");
  }
  for (int i = 0; i < K; ++i) {
    require(eta[i] >= 0 && eta[i] <= pi[i] * spad[i], "machine multiplier out of range");
    if (i >= m) require(eta[i] == 0, "multiplier on phantom machine");
  }
  for (int i = 0; i < m; ++i) sol.eta[i] = eta[i];

  sol.x.assign(m, std::vector<Rat>(n, Rat(0)));
  for (const Level& lv : dec.levels) {
    std::vector<Rat> ly, ls;
    for (int j = lv.first; j <= lv.last; ++j) ly.push_back(sol.y[j]);
    for (int i = lv.first; i <= std::min(lv.last, m - 1); ++i) ls.push_back(speeds[i]);
    const auto lx = level_allocation(ly, ls);
    for (int i = 0; i < static_cast<int>(ls.size()); ++i)
      for (int j = 0; j < static_cast<int>(ly.size()); ++j)
        sol.x[lv.first + i][lv.first + j] = lx[i][j];
  }
  return {sol, dec};
}

}  // namespace pfsched
