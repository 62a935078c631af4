#include "expcodes/spectral.hpp"

#include <cmath>
#include <vector>

#include "expcodes/rng.hpp"

namespace expcodes {

namespace {

// x lives on R, result on L: (A x)_l - (d/n) * sum(x)
void apply_deflated(const BipartiteGraph& g, const std::vector<double>& x,
                    std::vector<double>& out) {
  double mean_term = 0.0;
  for (double v : x) mean_term += v;
  mean_term *= static_cast<double>(g.d) / g.n;
  for (int l = 0; l < g.n; ++l) {
    double acc = 0.0;
    for (int r : g.left_adj[l]) acc += x[r];
    out[l] = acc - mean_term;
  }
}

// y lives on L, result on R: (A^T y)_r - (d/n) * sum(y)
void apply_deflated_t(const BipartiteGraph& g, const std::vector<double>& y,
                      std::vector<double>& out) {
  double mean_term = 0.0;
  for (double v : y) mean_term += v;
  mean_term *= static_cast<double>(g.d) / g.n;
  for (int r = 0; r < g.n; ++r) out[r] = -mean_term;
  for (int e = 0; e < g.num_edges(); ++e) out[g.right_of(e)] += y[g.left_of(e)];
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SpectralProfile measure_lambda(const BipartiteGraph& g, double tol) {
  SpectralProfile p;
  p.sigma1 = g.d;  // row and column sums are all d, so the top pair is uniform

  // deterministic start, orthogonal to the all-ones vector
  Rng rng(0x5eedf00dULL);
  std::vector<double> v(g.n), w(g.n), u(g.n);
  double mean = 0.0;
  for (auto& x : v) {
    x = rng.unit() - 0.5;
    mean += x;
  }
  mean /= g.n;
  for (auto& x : v) x -= mean;
  double nv = norm(v);
  if (nv == 0.0) v[0] = 1.0, nv = 1.0;
  for (auto& x : v) x /= nv;

  int max_iters = 10 * g.n * g.d;
  double est = 0.0;
  int stable = 0;
  for (int it = 0; it < max_iters; ++it) {
    apply_deflated(g, v, w);
    double new_est = 0.0;
    for (double x : w) new_est += x * x;  // <v, A'^T A' v> with ||v|| = 1
    apply_deflated_t(g, w, u);
    double nu = norm(u);
    if (nu < 1e-14) {
      est = new_est;
      break;  // deflated operator is (numerically) zero, e.g. K_{n,n}
    }
    for (int i = 0; i < g.n; ++i) v[i] = u[i] / nu;
    if (std::abs(new_est - est) <= tol * std::max(1.0, new_est)) {
      if (++stable >= 10) {
        est = new_est;
        break;
      }
    } else {
      stable = 0;
    }
    est = new_est;
  }
  p.sigma2 = std::sqrt(std::max(0.0, est));
  p.lambda = p.sigma2 / g.d;
  return p;
}

MixingReport mixing_audit(const BipartiteGraph& g, double lambda, int trials,
                          std::uint64_t seed) {
  Rng rng(seed);
  MixingReport rep;
  rep.trials = trials;
  rep.max_violation = -1.0;  // any audited pair raises it to a real value
  double nd = static_cast<double>(g.n) * g.d;
  for (int t = 0; t < trials; ++t) {
    int ssize = static_cast<int>(rng.below(g.n + 1));
    int tsize = static_cast<int>(rng.below(g.n + 1));
    VSet S = set_from_indices(g.n, rng.sample_without_replacement(g.n, ssize));
    VSet T = set_from_indices(g.n, rng.sample_without_replacement(g.n, tsize));
    double expected = static_cast<double>(g.d) / g.n * ssize * tsize;
    double dev = std::abs(static_cast<double>(edges_between(g, S, T)) - expected);
    double bound = lambda * g.d * std::sqrt(static_cast<double>(ssize) * tsize);
    double violation = (dev - bound) / nd;
    if (violation > rep.max_violation) rep.max_violation = violation;
    if (violation > 1e-9) ++rep.violations;
  }
  return rep;
}

}  // namespace expcodes
