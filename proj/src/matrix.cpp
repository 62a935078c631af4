#include "expcodes/matrix.hpp"

#include <stdexcept>

namespace expcodes {

int rref(GfMatrix& m, const Field& f, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    symbol s = f.inv(m[r][c]);
    for (int j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], s);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      symbol t = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(t, m[r][j]));
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

int rank(GfMatrix m, const Field& f) { return rref(m, f); }

GfMatrix nullspace_basis(GfMatrix m, const Field& f) {
  if (m.empty()) return {};
  int cols = static_cast<int>(m[0].size());
  std::vector<int> piv;
  int rk = rref(m, f, &piv);
  std::vector<char> is_pivot(cols, 0);
  for (int c : piv) is_pivot[c] = 1;
  GfMatrix basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Word v(cols, 0);
    v[c] = 1;
    // pivot row i has its pivot at piv[i]; solve m x = 0 backwards
    for (int i = 0; i < rk; ++i) v[piv[i]] = f.neg(m[i][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

GfMatrix mat_mul(const GfMatrix& a, const GfMatrix& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), m = b[0].size(), inner = b.size();
  GfMatrix out(n, Word(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      symbol s = a[i][k];
      if (s == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        out[i][j] = f.add(out[i][j], f.mul(s, b[k][j]));
    }
  return out;
}

GfMatrix transpose(const GfMatrix& m) {
  if (m.empty()) return {};
  GfMatrix out(m[0].size(), Word(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) out[j][i] = m[i][j];
  return out;
}

Word vec_mat(const Word& v, const GfMatrix& m, const Field& f) {
  if (m.empty()) return {};
  if (v.size() != m.size()) throw std::invalid_argument("vec_mat: size mismatch");
  Word out(m[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = f.add(out[j], f.mul(v[i], m[i][j]));
  }
  return out;
}

GfMatrix mat_inv(GfMatrix m, const Field& f) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("mat_inv: not square");
    m[i].resize(2 * n, 0);
    m[i][n + i] = 1;
  }
  if (rref(m, f) != static_cast<int>(n)) throw std::domain_error("mat_inv: singular");
  GfMatrix out(n, Word(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

}  // namespace expcodes
