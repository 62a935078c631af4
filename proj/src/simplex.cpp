#include "expcodes/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace expcodes {

std::optional<std::vector<double>> lp_feasible_point(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b,
    double tol) {
  const int m = static_cast<int>(A.size());
  if (m == 0) return std::vector<double>{};
  const int nvars = static_cast<int>(A[0].size());

  // columns: nvars originals, m slacks, one artificial per negative-rhs row
  int n_art = 0;
  for (double v : b)
    if (v < 0) ++n_art;
  const int ncols = nvars + m + n_art;
  std::vector<std::vector<double>> t(m, std::vector<double>(ncols + 1, 0.0));
  std::vector<int> basis(m);
  int art_seen = 0;
  for (int i = 0; i < m; ++i) {
    double sgn = b[i] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < nvars; ++j) t[i][j] = sgn * A[i][j];
    t[i][nvars + i] = sgn;  // slack
    t[i][ncols] = sgn * b[i];
    if (b[i] < 0) {
      int art_col = nvars + m + art_seen++;
      t[i][art_col] = 1.0;
      basis[i] = art_col;
    } else {
      basis[i] = nvars + i;
    }
  }

  // phase-1 objective w = sum of artificials, expressed over nonbasics
  std::vector<double> obj(ncols + 1, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] >= nvars + m)
      for (int j = 0; j <= ncols; ++j) obj[j] += t[i][j];

  const int max_pivots = 50000 + 200 * ncols;
  for (int pivots = 0; pivots < max_pivots; ++pivots) {
    // Bland: smallest improving non-artificial-preferred column
    int enter = -1;
    for (int j = 0; j < nvars + m; ++j)
      if (obj[j] > tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= tol) continue;
      double ratio = t[i][ncols] / t[i][enter];
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot happen in phase 1
    double piv = t[leave][enter];
    for (int j = 0; j <= ncols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || std::abs(t[i][enter]) < 1e-15) continue;
      double f = t[i][enter];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
    }
    double f = obj[enter];
    if (std::abs(f) > 0)
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  if (obj[ncols] > tol) return std::nullopt;  // residual infeasibility
  std::vector<double> x(nvars, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < nvars) x[basis[i]] = t[i][ncols];
  return x;
}

}  // namespace expcodes
