#include "expcodes/masked.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "expcodes/rng.hpp"

namespace expcodes {

MaskedMatrix MaskedMatrix::zeros(const BipartiteGraph& g) {
  return MaskedMatrix{&g, std::vector<double>(g.num_edges(), 0.0)};
}

MaskedMatrix MaskedMatrix::adjacency(const Subgraph& h) {
  MaskedMatrix m = zeros(*h.parent);
  for (int e = 0; e < h.parent->num_edges(); ++e)
    if (h.keep[e]) m.val[e] = 1.0;
  return m;
}

double MaskedMatrix::norm_sq_mu() const {
  double s = 0.0;
  for (double v : val) s += v * v;
  return s / static_cast<double>(g->num_edges());
}

double cut_value(const MaskedMatrix& m, const VSet& S, const VSet& T) {
  const BipartiteGraph& g = *m.g;
  if (static_cast<int>(S.size()) != g.n || static_cast<int>(T.size()) != g.n)
    throw std::invalid_argument("cut_value: set size mismatch");
  double acc = 0.0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (S[g.left_of(e)] && T[g.right_of(e)]) acc += m.val[e];
  return acc;
}

namespace {

// Rebuild the witness for a given S: pick the sign branch of the column
// sums with the larger absolute value. Returns the signed cut value.
CutWitness witness_for_mask(const MaskedMatrix& m, std::uint64_t smask) {
  const BipartiteGraph& g = *m.g;
  VSet S(g.n, 0);
  for (int l = 0; l < g.n; ++l) S[l] = (smask >> l) & 1;
  std::vector<double> cols(g.n, 0.0);
  for (int e = 0; e < g.num_edges(); ++e)
    if (S[g.left_of(e)]) cols[g.right_of(e)] += m.val[e];
  double pos = 0.0, neg = 0.0;
  for (double c : cols) {
    if (c > 0) pos += c;
    if (c < 0) neg += c;
  }
  bool positive_branch = pos >= -neg;
  VSet T(g.n, 0);
  for (int r = 0; r < g.n; ++r)
    T[r] = positive_branch ? (cols[r] > 0) : (cols[r] < 0);
  double value = cut_value(m, S, T);
  return CutWitness{std::move(S), std::move(T), value};
}

}  // namespace

CutWitness cut_norm_exact(const MaskedMatrix& m, int max_side) {
  const BipartiteGraph& g = *m.g;
  if (g.n > max_side)
    throw std::invalid_argument("cut_norm_exact: side exceeds enumeration cap");
  if (g.n > 32)
    throw std::invalid_argument("cut_norm_exact: side exceeds 32");
  const int n = g.n, d = g.d;

  // flat per-row edge tables; row l owns entries [l*d, (l+1)*d)
  std::vector<int> ridx(n * d);
  std::vector<double> w(n * d), row_sum(n, 0.0);
  for (int e = 0; e < n * d; ++e) {
    ridx[e] = g.right_of(e);
    w[e] = m.val[e];
    row_sum[e / d] += m.val[e];
  }

  // Gray-code scan over S. Maintaining sum and abs-sum of the column sums
  // gives the best-T value as (abs_sum + |sum|) / 2 without touching T.
  std::vector<double> cols(n, 0.0);
  double s1 = 0.0, sa = 0.0, best = 0.0;
  std::uint64_t best_t = 0, mask = 0;
  const std::uint64_t total = 1ull << n;
  const std::uint64_t refresh = (1ull << 24) - 1;
  for (std::uint64_t t = 1; t < total; ++t) {
    int b = std::countr_zero(t);
    mask ^= 1ull << b;
    double sgn = (mask >> b & 1) ? 1.0 : -1.0;
    const int base = b * d;
    for (int j = 0; j < d; ++j) {
      int r = ridx[base + j];
      double old = cols[r], nw = old + sgn * w[base + j];
      sa += std::fabs(nw) - std::fabs(old);
      cols[r] = nw;
    }
    s1 += sgn * row_sum[b];
    double cand = 0.5 * (sa + std::fabs(s1));
    if (cand > best) {
      best = cand;
      best_t = t;
    }
    if ((t & refresh) == refresh) {
      // periodic exact rebuild keeps float drift out of long scans
      std::fill(cols.begin(), cols.end(), 0.0);
      for (int l = 0; l < n; ++l)
        if (mask >> l & 1)
          for (int j = 0; j < d; ++j) cols[ridx[l * d + j]] += w[l * d + j];
      s1 = sa = 0.0;
      for (double c : cols) {
        s1 += c;
        sa += std::fabs(c);
      }
    }
  }
  std::uint64_t smask = best_t ^ (best_t >> 1);
  return witness_for_mask(m, smask);
}

namespace {

// DFS over include/exclude of rows (search order), maximizing the positive
// branch sum_j max(0, p_j). Any prefix is achievable by excluding the rest,
// so the incumbent updates at every node, not just leaves.
struct BbRun {
  int n = 0;
  const std::vector<std::vector<double>>* rows = nullptr;
  std::vector<std::vector<double>> suffix_pos;  // [t][j], rows t.. positive mass
  std::vector<double> p;
  double best = 0.0, stop = 0.0;
  std::uint64_t best_mask = 0, cur = 0;
  bool stopped = false;

  void descend(int t) {
    if (stopped) return;
    double val = 0.0, ub = 0.0;
    const auto& fut = suffix_pos[t];
    for (int j = 0; j < n; ++j) {
      if (p[j] > 0) val += p[j];
      double u = p[j] + fut[j];
      if (u > 0) ub += u;
    }
    if (val > best) {
      best = val;
      best_mask = cur;
      if (best > stop) {
        stopped = true;
        return;
      }
    }
    if (t == static_cast<int>(rows->size()) || ub <= best + 1e-9) return;
    // with a stop goal, a subtree that cannot climb strictly above it can
    // never trigger the early exit, so the goal verdict survives the prune
    if (std::isfinite(stop) && ub <= stop) return;
    const auto& row = (*rows)[t];
    cur |= 1ull << t;
    for (int j = 0; j < n; ++j) p[j] += row[j];
    descend(t + 1);
    cur &= ~(1ull << t);
    for (int j = 0; j < n; ++j) p[j] -= row[j];
    descend(t + 1);
  }
};

// best value and row mask (in search order) for one sign branch
std::pair<double, std::uint64_t> bb_branch(
    const std::vector<std::vector<double>>& rows, int n, double stop) {
  BbRun run;
  run.n = n;
  run.rows = &rows;
  run.suffix_pos.assign(rows.size() + 1, std::vector<double>(n, 0.0));
  for (int t = static_cast<int>(rows.size()) - 1; t >= 0; --t)
    for (int j = 0; j < n; ++j)
      run.suffix_pos[t][j] = run.suffix_pos[t + 1][j] + std::max(rows[t][j], 0.0);
  run.p.assign(n, 0.0);
  run.stop = stop;
  run.descend(0);
  return {run.best, run.best_mask};
}

}  // namespace

CutWitness cut_norm_exact_bb(const MaskedMatrix& m, double stop_above,
                             int max_side) {
  const BipartiteGraph& g = *m.g;
  if (g.n > max_side)
    throw std::invalid_argument("cut_norm_exact_bb: side exceeds cap");
  if (g.n > 63) throw std::invalid_argument("cut_norm_exact_bb: side exceeds 63");
  const int n = g.n;
  const double stop = stop_above < 0
                          ? std::numeric_limits<double>::infinity()
                          : stop_above;

  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (int e = 0; e < g.num_edges(); ++e)
    dense[g.left_of(e)][g.right_of(e)] += m.val[e];
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<double> weight(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) weight[i] += std::fabs(dense[i][j]);
  std::sort(order.begin(), order.end(),
            [&weight](int a, int b) { return weight[a] > weight[b]; });

  std::vector<std::vector<double>> rows(n), neg(n);
  for (int t = 0; t < n; ++t) {
    rows[t] = dense[order[t]];
    neg[t].resize(n);
    for (int j = 0; j < n; ++j) neg[t][j] = -rows[t][j];
  }

  auto [pos_val, pos_mask] = bb_branch(rows, n, stop);
  std::uint64_t mask = pos_mask;
  bool positive = true;
  if (pos_val <= stop) {
    auto [neg_val, neg_mask] = bb_branch(neg, n, stop);
    if (neg_val > pos_val) {
      mask = neg_mask;
      positive = false;
    }
  }

  VSet S(n, 0);
  for (int t = 0; t < n; ++t)
    if (mask >> t & 1) S[order[t]] = 1;
  std::vector<double> cols(n, 0.0);
  for (int e = 0; e < g.num_edges(); ++e)
    if (S[g.left_of(e)]) cols[g.right_of(e)] += m.val[e];
  VSet T(n, 0);
  for (int r = 0; r < n; ++r) T[r] = positive ? (cols[r] > 0) : (cols[r] < 0);
  double value = cut_value(m, S, T);
  return CutWitness{std::move(S), std::move(T), value};
}

namespace {

// one greedy alternation pass from an initial S; returns the local optimum
CutWitness alternate_from(const MaskedMatrix& m, VSet S) {
  const BipartiteGraph& g = *m.g;
  const int n = g.n;
  VSet T(n, 0);
  double best = -1.0;
  for (int round = 0; round < 64; ++round) {
    std::vector<double> cols(n, 0.0);
    for (int e = 0; e < g.num_edges(); ++e)
      if (S[g.left_of(e)]) cols[g.right_of(e)] += m.val[e];
    double pos = 0.0, neg = 0.0;
    for (double c : cols) {
      if (c > 0) pos += c;
      if (c < 0) neg += c;
    }
    bool pbranch = pos >= -neg;
    for (int r = 0; r < n; ++r) T[r] = pbranch ? (cols[r] > 0) : (cols[r] < 0);

    std::vector<double> rows(n, 0.0);
    for (int e = 0; e < g.num_edges(); ++e)
      if (T[g.right_of(e)]) rows[g.left_of(e)] += m.val[e];
    pos = neg = 0.0;
    for (double r : rows) {
      if (r > 0) pos += r;
      if (r < 0) neg += r;
    }
    pbranch = pos >= -neg;
    for (int l = 0; l < n; ++l) S[l] = pbranch ? (rows[l] > 0) : (rows[l] < 0);
    double value = pbranch ? pos : neg;
    if (std::abs(value) <= best) break;
    best = std::abs(value);
  }
  return CutWitness{S, T, cut_value(m, S, T)};
}

VSet sign_rounded_top_left_vector(const MaskedMatrix& m) {
  const BipartiteGraph& g = *m.g;
  const int n = g.n;
  Rng rng(0x517ec7a1ULL);
  std::vector<double> u(n), v(n);
  for (auto& x : v) x = rng.unit() - 0.5;
  for (int it = 0; it < 60; ++it) {
    std::fill(u.begin(), u.end(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e)
      u[g.left_of(e)] += m.val[e] * v[g.right_of(e)];
    double nu = 0.0;
    for (double x : u) nu += x * x;
    nu = std::sqrt(nu);
    if (nu < 1e-14) break;
    for (auto& x : u) x /= nu;
    std::fill(v.begin(), v.end(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e)
      v[g.right_of(e)] += m.val[e] * u[g.left_of(e)];
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv < 1e-14) break;
    for (auto& x : v) x /= nv;
  }
  VSet S(n, 0);
  for (int l = 0; l < n; ++l) S[l] = u[l] > 0;
  return S;
}

}  // namespace

CutWitness cut_norm_heuristic(const MaskedMatrix& m, std::uint64_t seed,
                              int restarts) {
  const BipartiteGraph& g = *m.g;
  if (restarts < 1) throw std::invalid_argument("cut_norm_heuristic: restarts < 1");
  Rng rng(seed);
  CutWitness best{empty_set(g.n), empty_set(g.n), 0.0};
  VSet singular = sign_rounded_top_left_vector(m);
  for (int attempt = 0; attempt < restarts; ++attempt) {
    VSet S(g.n, 0);
    if (attempt == 0) {
      S = singular;
    } else if (attempt == 1) {
      for (int l = 0; l < g.n; ++l) S[l] = !singular[l];
    } else {
      for (auto& b : S) b = static_cast<std::uint8_t>(rng.next() & 1);
    }
    CutWitness w = alternate_from(m, std::move(S));
    if (std::abs(w.value) > std::abs(best.value)) best = std::move(w);
  }
  return best;
}

}  // namespace expcodes
