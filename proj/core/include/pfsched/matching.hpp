#pragma once

#include <limits>
#include <vector>

namespace pfsched {

// Max-weight assignment on a rectangular weight matrix (rows x cols), weights
// >= 0. Returns col index per row, -1 where the row is left unmatched (padded
// cells carry weight zero, so skipping never loses value). Floating point;
// callers needing exactness must verify downstream.
inline std::vector<int> max_weight_matching(const std::vector<std::vector<double>>& weight) {
  const int rows = static_cast<int>(weight.size());
  const int cols = rows ? static_cast<int>(weight[0].size()) : 0;
  const int k = std::max(rows, cols);
  if (k == 0) return {};
  const double kInf = std::numeric_limits<double>::infinity();

  // Min-cost perfect assignment on the k x k padded matrix via shortest
  // augmenting paths with potentials (1-based arrays, column 0 is virtual).
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i + 1][j + 1] = -weight[i][j];

  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, kInf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const double cur = a[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> match(rows, -1);
  for (int j = 1; j <= k; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= rows && j <= cols) match[i - 1] = j - 1;
  }
  return match;
}

}  // namespace pfsched
