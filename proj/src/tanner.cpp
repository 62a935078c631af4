#include "expcodes/tanner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expcodes/factor.hpp"
#include "expcodes/regularity.hpp"

namespace expcodes {

TannerCode::TannerCode(const BipartiteGraph& g, LinearCode c1, LinearCode c2)
    : g_(&g), c1_(std::move(c1)), c2_(std::move(c2)) {
  if (c1_.n() != g.d || c2_.n() != g.d)
    throw std::invalid_argument("TannerCode: base code length must equal the degree");
  if (c1_.field().q() != c2_.field().q())
    throw std::invalid_argument("TannerCode: base codes over different fields");
  delta1_ = min_distance(c1_);
  delta2_ = min_distance(c2_);
  lambda_ = measure_lambda(g).lambda;
}

Word left_restriction(const TannerCode& t, const Word& h, int l) {
  const BipartiteGraph& g = t.graph();
  Word w(g.d);
  for (int slot = 0; slot < g.d; ++slot) w[slot] = h[g.edge_at_left(l, slot)];
  return w;
}

Word right_restriction(const TannerCode& t, const Word& h, int r) {
  const BipartiteGraph& g = t.graph();
  Word w(g.d);
  for (int j = 0; j < g.d; ++j) w[j] = h[g.edge_at_right(r, j)];
  return w;
}

bool tanner_membership(const TannerCode& t, const Word& h) {
  if (static_cast<long long>(h.size()) != t.length())
    throw std::invalid_argument("tanner_membership: wrong word length");
  for (symbol s : h)
    if (s == kErased) throw std::invalid_argument("tanner_membership: erased symbol");
  for (int l = 0; l < t.n(); ++l)
    if (!t.left_code().is_codeword(left_restriction(t, h, l))) return false;
  for (int r = 0; r < t.n(); ++r)
    if (!t.right_code().is_codeword(right_restriction(t, h, r))) return false;
  return true;
}

std::optional<LinearCode> tanner_basis(const TannerCode& t) {
  long long nd = t.length();
  if (nd > 4096) throw std::length_error("tanner_basis: instance too large");
  const BipartiteGraph& g = t.graph();
  GfMatrix constraints;
  for (int l = 0; l < t.n(); ++l)
    for (const auto& prow : t.left_code().parity()) {
      Word row(nd, 0);
      for (int slot = 0; slot < g.d; ++slot)
        row[g.edge_at_left(l, slot)] = prow[slot];
      constraints.push_back(std::move(row));
    }
  for (int r = 0; r < t.n(); ++r)
    for (const auto& prow : t.right_code().parity()) {
      Word row(nd, 0);
      for (int j = 0; j < g.d; ++j) row[g.edge_at_right(r, j)] = prow[j];
      constraints.push_back(std::move(row));
    }
  GfMatrix gen;
  if (constraints.empty()) {
    // both base codes are the full space, so every edge word qualifies
    gen.assign(nd, Word(nd, 0));
    for (long long i = 0; i < nd; ++i) gen[i][i] = 1;
  } else {
    gen = nullspace_basis(constraints, t.field());
  }
  if (gen.empty()) return std::nullopt;
  return LinearCode(t.field(), std::move(gen));
}

double erasure_fraction(const LeftAssignment& g) {
  if (g.empty()) throw std::invalid_argument("erasure_fraction: empty assignment");
  int erased = 0;
  for (const auto& w : g) erased += w.empty();
  return static_cast<double>(erased) / g.size();
}

double left_disagreement(const TannerCode& t, const LeftAssignment& g,
                         const Word& h) {
  int wrong = 0;
  for (int l = 0; l < t.n(); ++l) {
    if (g[l].empty()) continue;
    if (g[l] != left_restriction(t, h, l)) ++wrong;
  }
  return static_cast<double>(wrong) / t.n();
}

EeDecodeResult unique_decode_errors_erasures(const TannerCode& t,
                                             const LeftAssignment& g,
                                             double eps) {
  const BipartiteGraph& gr = t.graph();
  if (static_cast<int>(g.size()) != t.n())
    throw std::invalid_argument("unique_decode_errors_erasures: assignment size");
  for (const auto& w : g)
    if (!w.empty() && !t.left_code().is_codeword(w))
      throw std::invalid_argument(
          "unique_decode_errors_erasures: non-erased entries must be left codewords");

  EeDecodeResult out;
  out.lambda_ok =
      t.lambda() <= (eps / 8) * std::min(t.delta1(), t.delta2()) + 1e-12;

  Word z(t.length(), kErased);
  for (int l = 0; l < t.n(); ++l) {
    if (g[l].empty()) continue;
    for (int slot = 0; slot < gr.d; ++slot)
      z[gr.edge_at_left(l, slot)] = g[l][slot];
  }

  int cap = static_cast<int>(
      std::ceil(4 * std::log2(static_cast<double>(t.length()))));
  if (cap < 2) cap = 2;
  for (int round = 0; round < cap; ++round) {
    bool changed = false;
    bool right_side = (round % 2 == 0);
    for (int v = 0; v < t.n(); ++v) {
      Word w = right_side ? right_restriction(t, z, v) : left_restriction(t, z, v);
      const LinearCode& base = right_side ? t.right_code() : t.left_code();
      Word best = nearest_codeword_with_erasures(base, w);
      if (best != w) {
        changed = true;
        for (int j = 0; j < gr.d; ++j) {
          int e = right_side ? gr.edge_at_right(v, j) : gr.edge_at_left(v, j);
          z[e] = best[j];
        }
      }
    }
    out.rounds = round + 1;
    if (!changed) break;
  }

  double s = erasure_fraction(g);
  if (tanner_membership(t, z) &&
      2 * left_disagreement(t, g, z) + s <= t.delta2() - 4 * eps + 1e-12)
    out.codeword = std::move(z);
  return out;
}

Subgraph agreement_graph_tanner(const TannerCode& t,
                                const std::vector<std::vector<Word>>& left_lists,
                                const std::vector<std::vector<Word>>& right_lists,
                                int i, int j) {
  const BipartiteGraph& g = t.graph();
  Subgraph h{&g, std::vector<std::uint8_t>(g.num_edges(), 0)};
  for (int e = 0; e < g.num_edges(); ++e) {
    const Word& lw = left_lists[g.left_of(e)][i];
    const Word& rw = right_lists[g.right_of(e)][j];
    h.keep[e] = lw[g.left_slot_of(e)] == rw[g.right_slot_of(e)];
  }
  return h;
}

int max_list_size(const LinearCode& code, double radius) {
  double words = std::pow(static_cast<double>(code.field().q()), code.n());
  if (words > 4096)
    throw std::length_error("max_list_size: alphabet too large, supply the bound");
  auto all = enumerate_codewords(code);
  int total = static_cast<int>(words);
  int best = 0;
  Word w(code.n(), 0);
  for (int idx = 0; idx < total; ++idx) {
    int count = 0;
    for (const auto& c : all)
      if (fractional_distance(w, c) <= radius + 1e-12) ++count;
    best = std::max(best, count);
    for (int pos = 0; pos < code.n(); ++pos) {
      if (++w[pos] < code.field().q()) break;
      w[pos] = 0;
    }
  }
  return best;
}

int max_list_recovery_size(const LinearCode& code, int k, double radius) {
  std::uint32_t q = code.field().q();
  if (k < 1 || k > static_cast<int>(q))
    throw std::invalid_argument("max_list_recovery_size: bad input size");
  // all k-subsets of the alphabet
  std::vector<std::vector<symbol>> subsets;
  std::vector<symbol> cur;
  auto gen = [&](auto&& self, symbol start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (symbol s = start; s < q; ++s) {
      cur.push_back(s);
      self(self, s + 1);
      cur.pop_back();
    }
  };
  gen(gen, 0);
  double combos = std::pow(static_cast<double>(subsets.size()), code.n());
  if (combos > 4096)
    throw std::length_error("max_list_recovery_size: too many inputs, supply the bound");
  auto all = enumerate_codewords(code);
  int best = 0;
  std::vector<int> idx(code.n(), 0);
  long long total = static_cast<long long>(combos);
  for (long long step = 0; step < total; ++step) {
    int count = 0;
    int miss_budget = radius_to_count(radius, code.n());
    for (const auto& c : all) {
      int miss = 0;
      for (int pos = 0; pos < code.n(); ++pos) {
        const auto& s = subsets[idx[pos]];
        if (std::find(s.begin(), s.end(), c[pos]) == s.end()) ++miss;
      }
      if (miss <= miss_budget) ++count;
    }
    best = std::max(best, count);
    for (int pos = 0; pos < code.n(); ++pos) {
      if (++idx[pos] < static_cast<int>(subsets.size())) break;
      idx[pos] = 0;
    }
  }
  return best;
}

namespace {

// Candidate handling shared by every decode path: run the errors-and-
// erasures decoder, apply the radius filter, collect distinct survivors.
struct TannerCollector {
  const TannerCode& t;
  const Word& g;
  double radius;
  double eps_ee;
  std::vector<Word> found;
  long long ee_calls = 0;

  void try_assignment(const LeftAssignment& a) {
    ++ee_calls;
    auto res = unique_decode_errors_erasures(t, a, eps_ee);
    if (!res.codeword) return;
    const Word& h = *res.codeword;
    if (fractional_distance(g, h) > radius + 1e-12) return;
    if (std::find(found.begin(), found.end(), h) == found.end())
      found.push_back(h);
  }
};

}  // namespace

TannerDecodeReport list_decode_tanner(const TannerCode& t, const Word& g,
                                      double eps, const CutOracle& oracle,
                                      const TannerDecodeParams& params) {
  if (static_cast<long long>(g.size()) != t.length())
    throw std::invalid_argument("list_decode_tanner: wrong word length");
  if (eps <= 0) throw std::invalid_argument("list_decode_tanner: eps must be positive");

  TannerDecodeReport rep;
  rep.k1 = params.k1 > 0 ? params.k1
                         : max_list_size(t.left_code(), t.delta1_dec());
  rep.k2 = params.k2 > 0 ? params.k2
                         : max_list_size(t.right_code(), t.delta2_dec());

  std::vector<std::vector<Word>> left_lists(t.n()), right_lists(t.n());
  for (int l = 0; l < t.n(); ++l)
    left_lists[l] = pad_list(
        t.left_code(),
        brute_force_list_decode(t.left_code(), left_restriction(t, g, l),
                                t.delta1_dec()),
        rep.k1);
  for (int r = 0; r < t.n(); ++r)
    right_lists[r] = pad_list(
        t.right_code(),
        brute_force_list_decode(t.right_code(), right_restriction(t, g, r),
                                t.delta2_dec()),
        rep.k2);

  rep.gamma = params.gamma_override > 0
                  ? params.gamma_override
                  : eps * eps / (14.0 * rep.k1 * rep.k2);

  std::vector<FunctionFamily> families;
  bool families_ok = true;
  double eta_formula = 0.0;
  for (int i = 0; i < rep.k1; ++i)
    for (int j = 0; j < rep.k2; ++j) {
      Subgraph h = agreement_graph_tanner(t, left_lists, right_lists, i, j);
      auto rf = regular_family(h, rep.gamma, oracle, t.lambda());
      families_ok = families_ok && rf.lambda_ok;
      eta_formula = rf.eta;
      families.push_back(std::move(rf.family));
    }
  rep.eta = params.eta_override > 0 ? params.eta_override : eta_formula;

  double radius =
      std::min(t.delta1() * t.delta2_dec(), t.delta1_dec() * t.delta2()) - eps;
  TannerCollector collect{t, g, radius, eps / 8, {}, 0};

  // direct decode of the received word and the K1 constant-index fills make
  // the easy cases (an uncorrupted codeword above all) independent of net
  // coverage; the same radius filter applies, so they never hurt soundness
  {
    LeftAssignment direct(t.n());
    for (int l = 0; l < t.n(); ++l)
      direct[l] = nearest_codeword_with_erasures(t.left_code(),
                                                 left_restriction(t, g, l));
    collect.try_assignment(direct);
  }
  for (int i = 0; i < rep.k1; ++i) {
    LeftAssignment fixed(t.n());
    for (int l = 0; l < t.n(); ++l) fixed[l] = left_lists[l][i];
    collect.try_assignment(fixed);
  }

  FunctionFamily fam = family_union(families);
  Factor b = build_factor(fam);
  NetEnumerator net(fam, b, rep.k1, rep.eta / 4, params.net_cap);
  while (auto point = net.next()) {
    auto sets = round_to_sets(point->fbar, b);
    LeftAssignment a(t.n());
    for (int l = 0; l < t.n(); ++l) {
      for (int i = 0; i < rep.k1; ++i)
        if (sets[i][l]) {
          a[l] = left_lists[l][i];
          break;
        }
    }
    collect.try_assignment(a);
  }
  rep.net_points = net.emitted();
  rep.ee_calls = collect.ee_calls;

  std::sort(collect.found.begin(), collect.found.end());
  rep.list = std::move(collect.found);
  rep.lambda_ok = t.lambda() <= rep.gamma * rep.gamma / 2500 + 1e-15 &&
                  t.lambda() <= (eps / 64) * std::min(t.delta1(), t.delta2()) +
                                    1e-15 &&
                  families_ok;
  return rep;
}

double tanner_distance_bound(double delta1, double delta2, double lambda) {
  if (delta1 < 0 || delta1 > 1 || delta2 < 0 || delta2 > 1 || lambda < 0)
    throw std::invalid_argument("tanner_distance_bound: inputs out of range");
  double root = std::sqrt(delta1 * delta2);
  double bound = root * (root - lambda);
  return bound > 0 ? bound : 0.0;
}

double tanner_rate_bound(double rho1, double rho2) { return rho1 + rho2 - 1; }

}  // namespace expcodes
