#include "expcodes/regularity.hpp"

#include <cmath>
#include <ostream>

namespace expcodes {

RegularityDecomposition regularity_decompose(const Subgraph& h, double gamma,
                                             const CutOracle& oracle,
                                             long long max_iters) {
  if (!(gamma > 0.0)) throw std::invalid_argument("regularity_decompose: gamma must be positive");
  const BipartiteGraph& g = *h.parent;
  const double alpha = oracle.alpha();
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("regularity_decompose: oracle alpha out of (0, 1]");
  if (max_iters < 0) {
    double budget = std::ceil(2.0 / ((alpha * gamma) * (alpha * gamma)));
    max_iters = budget > 1e18 ? static_cast<long long>(1e18)
                              : static_cast<long long>(budget);
  }

  RegularityDecomposition dec;
  dec.gamma = gamma;
  dec.alpha = alpha;
  MaskedMatrix m = MaskedMatrix::adjacency(h);
  dec.potential.push_back(m.norm_sq_mu());
  const double threshold = alpha * gamma * g.num_edges();
  const double step = alpha * gamma;

  for (;;) {
    CutWitness w = oracle.best_cut(m);
    if (std::abs(w.value) <= threshold) break;
    if (static_cast<long long>(dec.triples.size()) >= max_iters)
      throw DecompositionBudgetError(
          "regularity_decompose: iteration budget exhausted", std::move(dec));
    double c = w.value > 0 ? step : -step;
    for (int e = 0; e < g.num_edges(); ++e)
      if (w.S[g.left_of(e)] && w.T[g.right_of(e)]) m.val[e] -= c;
    dec.triples.push_back(CutTriple{c, std::move(w.S), std::move(w.T)});
    dec.potential.push_back(m.norm_sq_mu());
  }
  return dec;
}

MaskedMatrix residual_matrix(const Subgraph& h, const RegularityDecomposition& d) {
  const BipartiteGraph& g = *h.parent;
  MaskedMatrix m = MaskedMatrix::adjacency(h);
  for (const auto& t : d.triples)
    for (int e = 0; e < g.num_edges(); ++e)
      if (t.S[g.left_of(e)] && t.T[g.right_of(e)]) m.val[e] -= t.c;
  return m;
}

double residual_cut_value(const Subgraph& h, const RegularityDecomposition& d,
                          const VSet& S, const VSet& T) {
  const BipartiteGraph& g = *h.parent;
  double acc = static_cast<double>(edges_between(h, S, T));
  VSet si(g.n), ti(g.n);
  for (const auto& t : d.triples) {
    for (int i = 0; i < g.n; ++i) {
      si[i] = S[i] && t.S[i];
      ti[i] = T[i] && t.T[i];
    }
    acc -= t.c * static_cast<double>(edges_between(g, si, ti));
  }
  return acc;
}

FunctionFamily make_family(int n, const std::vector<VSet>& sets) {
  FunctionFamily f;
  f.n = n;
  f.sets.push_back(full_set(n));
  for (const auto& s : sets) {
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("make_family: set over wrong ground set");
    bool dup = false;
    for (const auto& have : f.sets)
      if (have == s) {
        dup = true;
        break;
      }
    if (!dup) f.sets.push_back(s);
  }
  return f;
}

FunctionFamily family_union(const std::vector<FunctionFamily>& families) {
  if (families.empty()) throw std::invalid_argument("family_union: no families");
  int n = families[0].n;
  std::vector<VSet> all;
  for (const auto& f : families) {
    if (f.n != n) throw std::invalid_argument("family_union: ground set mismatch");
    for (const auto& s : f.sets) all.push_back(s);
  }
  return make_family(n, all);
}

RegularFamilyResult regular_family(const Subgraph& h, double gamma,
                                   const CutOracle& oracle, double lambda) {
  RegularityDecomposition dec = regularity_decompose(h, gamma / 4.0, oracle);
  std::vector<VSet> sets;
  sets.reserve(dec.triples.size());
  for (const auto& t : dec.triples) sets.push_back(t.S);
  RegularFamilyResult out;
  out.family = make_family(h.parent->n, sets);
  out.eta = oracle.alpha() * gamma * gamma / 16.0;
  out.lambda_ok = lambda <= oracle.alpha() * gamma * gamma / 32.0 + 1e-12;
  return out;
}

void dump_decomposition(const RegularityDecomposition& d, std::ostream& os) {
  for (const auto& t : d.triples) {
    os << t.c << ' ' << set_size(t.S) << ' ' << set_size(t.T) << '\n';
    auto write = [&os](const VSet& s) {
      bool first = true;
      for (int i : indices_of(s)) {
        os << (first ? "" : " ") << i;
        first = false;
      }
      os << '\n';
    };
    write(t.S);
    write(t.T);
  }
}

}  // namespace expcodes
