#include "expcodes/ael.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expcodes/factor.hpp"
#include "expcodes/regularity.hpp"

namespace expcodes {

AELCode::AELCode(const BipartiteGraph& g, LinearCode inner,
                 std::shared_ptr<const OuterCode> outer)
    : g_(&g), inner_(std::move(inner)), outer_(std::move(outer)) {
  if (!outer_) throw std::invalid_argument("AELCode: missing outer code");
  if (inner_.n() != g.d)
    throw std::invalid_argument("AELCode: inner length must equal the degree");
  if (outer_->length() != g.n)
    throw std::invalid_argument("AELCode: outer length must equal the left side");
  if (outer_->symbol_dim() != inner_.k())
    throw std::invalid_argument(
        "AELCode: outer symbols must be inner messages (dimension mismatch)");
  if (outer_->field().q() != inner_.field().q())
    throw std::invalid_argument("AELCode: field mismatch");
  delta_in_ = min_distance(inner_);
  lambda_ = measure_lambda(g).lambda;
}

Word unfold(const AELCode& a, const FoldedWord& f) {
  const BipartiteGraph& g = a.graph();
  if (static_cast<long long>(f.size()) != a.length())
    throw std::invalid_argument("unfold: wrong length");
  Word h(f.size());
  for (int r = 0; r < g.n; ++r)
    for (int j = 0; j < g.d; ++j) h[g.edge_at_right(r, j)] = f[r * g.d + j];
  return h;
}

FoldedWord fold(const AELCode& a, const Word& edge_word) {
  const BipartiteGraph& g = a.graph();
  if (static_cast<long long>(edge_word.size()) != a.length())
    throw std::invalid_argument("fold: wrong length");
  FoldedWord f(edge_word.size());
  for (int r = 0; r < g.n; ++r)
    for (int j = 0; j < g.d; ++j) f[r * g.d + j] = edge_word[g.edge_at_right(r, j)];
  return f;
}

double delta_r(const FoldedWord& x, const FoldedWord& y, int n, int d) {
  if (x.size() != y.size() || static_cast<long long>(x.size()) != 1ll * n * d)
    throw std::invalid_argument("delta_r: shape mismatch");
  int diff = 0;
  for (int r = 0; r < n; ++r)
    if (!std::equal(x.begin() + 1ll * r * d, x.begin() + 1ll * (r + 1) * d,
                    y.begin() + 1ll * r * d))
      ++diff;
  return static_cast<double>(diff) / n;
}

FoldedWord ael_encode(const AELCode& a, const OuterWord& w) {
  if (!a.outer().is_codeword(w))
    throw std::invalid_argument("ael_encode: input is not an outer codeword");
  const BipartiteGraph& g = a.graph();
  int dim = a.inner().k();
  Word h(a.length());
  for (int l = 0; l < g.n; ++l) {
    Word msg(w.begin() + static_cast<std::size_t>(l) * dim,
             w.begin() + static_cast<std::size_t>(l + 1) * dim);
    Word enc = a.inner().encode(msg);
    for (int slot = 0; slot < g.d; ++slot) h[g.edge_at_left(l, slot)] = enc[slot];
  }
  return fold(a, h);
}

namespace {

// Left restriction of an edge word under the AEL graph, in slot order.
Word left_block(const AELCode& a, const Word& edge_word, int l) {
  const BipartiteGraph& g = a.graph();
  Word w(g.d);
  for (int slot = 0; slot < g.d; ++slot)
    w[slot] = edge_word[g.edge_at_left(l, slot)];
  return w;
}

// Extracts the outer word of an edge word whose left restrictions are all
// inner codewords; nullopt otherwise.
std::optional<OuterWord> outer_word_of(const AELCode& a, const Word& edge_word) {
  int dim = a.inner().k();
  OuterWord w(static_cast<std::size_t>(a.n()) * dim);
  for (int l = 0; l < a.n(); ++l) {
    Word blk = left_block(a, edge_word, l);
    if (!a.inner().is_codeword(blk)) return std::nullopt;
    Word msg = a.inner().message_of(blk);
    std::copy(msg.begin(), msg.end(), w.begin() + static_cast<std::size_t>(l) * dim);
  }
  return w;
}

}  // namespace

bool ael_membership(const AELCode& a, const FoldedWord& f) {
  auto w = outer_word_of(a, unfold(a, f));
  return w && a.outer().is_codeword(*w);
}

double ael_distance_bound(double delta_in, double delta_out, double lambda) {
  if (delta_out <= 0)
    throw std::invalid_argument("ael_distance_bound: delta_out must be positive");
  if (delta_in < 0 || delta_in > 1 || delta_out > 1 || lambda < 0)
    throw std::invalid_argument("ael_distance_bound: inputs out of range");
  double bound = delta_in - lambda / delta_out;
  return bound > 0 ? bound : 0.0;
}

std::vector<std::vector<Word>> local_lists_left(const AELCode& a,
                                                const FoldedWord& g,
                                                double radius, int K) {
  Word edge_word = unfold(a, g);
  std::vector<std::vector<Word>> lists(a.n());
  for (int l = 0; l < a.n(); ++l)
    lists[l] = pad_list(
        a.inner(),
        brute_force_list_decode(a.inner(), left_block(a, edge_word, l), radius),
        K);
  return lists;
}

Subgraph agreement_graph_ael(const AELCode& a, const FoldedWord& g,
                             const std::vector<std::vector<Word>>& lists,
                             int i) {
  const BipartiteGraph& gr = a.graph();
  Word edge_word = unfold(a, g);
  Subgraph h{&gr, std::vector<std::uint8_t>(gr.num_edges(), 0)};
  for (int e = 0; e < gr.num_edges(); ++e)
    h.keep[e] = lists[gr.left_of(e)][i][gr.left_slot_of(e)] == edge_word[e];
  return h;
}

namespace {

// Shared tail of both AEL algorithms: finish a per-vertex inner-codeword
// placement through the outer decoder, encode, filter, dedupe.
struct AelCollector {
  const AELCode& a;
  std::function<bool(const FoldedWord&)> keep;
  std::vector<FoldedWord> found;
  long long outer_calls = 0;

  void try_placement(const std::vector<const Word*>& placement) {
    int dim = a.inner().k();
    OuterWord u(static_cast<std::size_t>(a.n()) * dim);
    for (int l = 0; l < a.n(); ++l) {
      Word msg = a.inner().message_of(*placement[l]);
      std::copy(msg.begin(), msg.end(),
                u.begin() + static_cast<std::size_t>(l) * dim);
    }
    ++outer_calls;
    auto w = a.outer().unique_decode(u);
    if (!w) return;
    FoldedWord h = ael_encode(a, *w);
    if (!keep(h)) return;
    if (std::find(found.begin(), found.end(), h) == found.end())
      found.push_back(h);
  }
};

// Runs the family/net pipeline over left index tuples for an already built
// collection of agreement graphs.
void run_net_pipeline(const AELCode& a, const std::vector<Subgraph>& graphs,
                      const std::vector<std::vector<Word>>& lists, int K,
                      double gamma, const CutOracle& oracle,
                      const AelParams& params, AelCollector& collect,
                      AelReport& rep, bool& families_ok) {
  std::vector<FunctionFamily> families;
  families_ok = true;
  double eta_formula = 0.0;
  for (const auto& h : graphs) {
    auto rf = regular_family(h, gamma, oracle, a.lambda());
    families_ok = families_ok && rf.lambda_ok;
    eta_formula = rf.eta;
    families.push_back(std::move(rf.family));
  }
  rep.eta = params.eta_override > 0 ? params.eta_override : eta_formula;

  FunctionFamily fam = family_union(families);
  Factor b = build_factor(fam);
  Word zero_inner = a.inner().zero();
  NetEnumerator net(fam, b, K, rep.eta / 4, params.net_cap);
  while (auto point = net.next()) {
    auto sets = round_to_sets(point->fbar, b);
    std::vector<const Word*> placement(a.n(), &zero_inner);
    for (int l = 0; l < a.n(); ++l)
      for (int i = 0; i < K; ++i)
        if (sets[i][l]) {
          placement[l] = &lists[l][i];
          break;
        }
    collect.try_placement(placement);
  }
  rep.net_points = net.emitted();
}

}  // namespace

AelReport list_decode_ael(const AELCode& a, const FoldedWord& g, double beta,
                          double eps, const CutOracle& oracle,
                          const AelParams& params) {
  if (eps <= 0) throw std::invalid_argument("list_decode_ael: eps must be positive");
  if (beta < 0 || beta > a.delta_in() - eps + 1e-12)
    throw std::invalid_argument("list_decode_ael: beta outside [0, delta_in - eps]");

  AelReport rep;
  rep.K = params.K > 0 ? params.K : max_list_size(a.inner(), beta + eps);
  rep.gamma = params.gamma_override > 0
                  ? params.gamma_override
                  : eps * a.delta_dec() / (4.0 * rep.K);

  auto lists = local_lists_left(a, g, beta + eps, rep.K);

  AelCollector collect{
      a,
      [&](const FoldedWord& h) {
        return delta_r(g, h, a.n(), a.d()) <= beta + 1e-12;
      },
      {},
      0};

  // the received word's own nearest-inner placement and the K constant-
  // index placements are cheap candidates; the radius filter still applies
  {
    Word edge_word = unfold(a, g);
    std::vector<Word> nearest(a.n());
    std::vector<const Word*> placement(a.n());
    for (int l = 0; l < a.n(); ++l) {
      nearest[l] =
          nearest_codeword_with_erasures(a.inner(), left_block(a, edge_word, l));
      placement[l] = &nearest[l];
    }
    collect.try_placement(placement);
  }
  for (int i = 0; i < rep.K; ++i) {
    std::vector<const Word*> placement(a.n());
    for (int l = 0; l < a.n(); ++l) placement[l] = &lists[l][i];
    collect.try_placement(placement);
  }

  std::vector<Subgraph> graphs;
  for (int i = 0; i < rep.K; ++i)
    graphs.push_back(agreement_graph_ael(a, g, lists, i));

  bool families_ok = false;
  run_net_pipeline(a, graphs, lists, rep.K, rep.gamma, oracle, params, collect,
                   rep, families_ok);

  rep.outer_calls = collect.outer_calls;
  std::sort(collect.found.begin(), collect.found.end());
  rep.list = std::move(collect.found);
  rep.lambda_ok = a.lambda() <= rep.gamma + 1e-12 && families_ok;
  return rep;
}

namespace {

// Pads a candidate block set to exactly k distinct blocks with the
// lexicographically first d-words not already present.
std::vector<Word> pad_blocks(const std::vector<Word>& blocks, int k, int d,
                             std::uint32_t q) {
  std::vector<Word> out = blocks;
  Word w(d, 0);
  while (static_cast<int>(out.size()) < k) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    int pos = d - 1;
    while (pos >= 0) {
      if (++w[pos] < q) break;
      w[pos] = 0;
      --pos;
    }
    if (pos < 0 && static_cast<int>(out.size()) < k)
      throw std::invalid_argument("pad_blocks: alphabet exhausted");
  }
  return out;
}

}  // namespace

AelReport list_recover_ael(const AELCode& a, const RecoveryInput& input, int k,
                           double beta, double eps, const CutOracle& oracle,
                           const AelParams& params) {
  if (eps <= 0) throw std::invalid_argument("list_recover_ael: eps must be positive");
  if (beta < 0 || beta > a.delta_in() - eps + 1e-12)
    throw std::invalid_argument("list_recover_ael: beta outside [0, delta_in - eps]");
  if (static_cast<int>(input.size()) != a.n())
    throw std::invalid_argument("list_recover_ael: one candidate set per right vertex");
  for (const auto& set : input) {
    if (set.empty() || static_cast<int>(set.size()) > k)
      throw std::invalid_argument("list_recover_ael: candidate sets must have 1..k blocks");
    for (const auto& blk : set) {
      if (static_cast<int>(blk.size()) != a.d())
        throw std::invalid_argument("list_recover_ael: blocks must have length d");
      for (symbol s : blk)
        if (s >= a.field().q())
          throw std::invalid_argument("list_recover_ael: symbol out of range");
    }
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j)
        if (set[i] == set[j])
          throw std::invalid_argument("list_recover_ael: duplicate candidate block");
  }

  AelReport rep;
  rep.K = params.K > 0 ? params.K
                       : max_list_recovery_size(a.inner(), k, beta + eps);
  rep.gamma = params.gamma_override > 0
                  ? params.gamma_override
                  : eps * a.delta_dec() / (5.0 * k * rep.K);

  const BipartiteGraph& gr = a.graph();
  RecoveryInput padded(a.n());
  for (int r = 0; r < a.n(); ++r)
    padded[r] = pad_blocks(input[r], k, a.d(), a.field().q());

  // per-edge candidate symbols from the unpadded right sets
  std::vector<std::vector<symbol>> edge_lists(a.length());
  for (int r = 0; r < a.n(); ++r)
    for (int j = 0; j < gr.d; ++j) {
      auto& el = edge_lists[gr.edge_at_right(r, j)];
      for (const auto& blk : input[r])
        if (std::find(el.begin(), el.end(), blk[j]) == el.end())
          el.push_back(blk[j]);
    }

  std::vector<std::vector<Word>> lists(a.n());
  for (int l = 0; l < a.n(); ++l) {
    std::vector<std::vector<symbol>> per_pos(gr.d);
    for (int slot = 0; slot < gr.d; ++slot)
      per_pos[slot] = edge_lists[gr.edge_at_left(l, slot)];
    lists[l] = pad_list(a.inner(),
                        brute_force_list_recover(a.inner(), per_pos, beta + eps),
                        rep.K);
  }

  AelCollector collect{
      a,
      [&](const FoldedWord& h) {
        int miss = 0;
        for (int r = 0; r < a.n(); ++r) {
          Word blk(h.begin() + static_cast<std::size_t>(r) * a.d(),
                   h.begin() + static_cast<std::size_t>(r + 1) * a.d());
          if (std::find(input[r].begin(), input[r].end(), blk) == input[r].end())
            ++miss;
        }
        return static_cast<double>(miss) / a.n() <= beta + 1e-12;
      },
      {},
      0};

  // constant-index placements on both sides seed the candidate pool
  for (int j = 0; j < k; ++j) {
    FoldedWord f(a.length());
    for (int r = 0; r < a.n(); ++r)
      std::copy(padded[r][j].begin(), padded[r][j].end(),
                f.begin() + static_cast<std::size_t>(r) * a.d());
    Word edge_word = unfold(a, f);
    std::vector<Word> nearest(a.n());
    std::vector<const Word*> placement(a.n());
    for (int l = 0; l < a.n(); ++l) {
      nearest[l] =
          nearest_codeword_with_erasures(a.inner(), left_block(a, edge_word, l));
      placement[l] = &nearest[l];
    }
    collect.try_placement(placement);
  }
  for (int i = 0; i < rep.K; ++i) {
    std::vector<const Word*> placement(a.n());
    for (int l = 0; l < a.n(); ++l) placement[l] = &lists[l][i];
    collect.try_placement(placement);
  }

  std::vector<Subgraph> graphs;
  for (int i = 0; i < rep.K; ++i)
    for (int j = 0; j < k; ++j) {
      Subgraph h{&gr, std::vector<std::uint8_t>(gr.num_edges(), 0)};
      for (int e = 0; e < gr.num_edges(); ++e)
        h.keep[e] = lists[gr.left_of(e)][i][gr.left_slot_of(e)] ==
                    padded[gr.right_of(e)][j][gr.right_slot_of(e)];
      graphs.push_back(std::move(h));
    }

  bool families_ok = false;
  run_net_pipeline(a, graphs, lists, rep.K, rep.gamma, oracle, params, collect,
                   rep, families_ok);

  rep.outer_calls = collect.outer_calls;
  std::sort(collect.found.begin(), collect.found.end());
  rep.list = std::move(collect.found);
  rep.lambda_ok = a.lambda() <= rep.gamma * eps + 1e-12 && families_ok;
  return rep;
}

ParameterReport parameter_check(double eps, double delta_dec, int K, int k,
                                double lambda, const std::string& mode) {
  if (eps <= 0 || K < 1 || k < 1)
    throw std::invalid_argument("parameter_check: bad parameters");
  ParameterReport rep;
  rep.mode = mode;
  int graphs;
  if (mode == "ael-decode") {
    rep.gamma = eps * delta_dec / (4.0 * K);
    graphs = K;
  } else if (mode == "ael-recover") {
    rep.gamma = eps * delta_dec / (5.0 * k * K);
    graphs = K * k;
  } else if (mode == "tanner-decode") {
    rep.gamma = eps * eps / (14.0 * K * k);
    graphs = K * k;
  } else {
    throw std::invalid_argument("parameter_check: unknown mode " + mode);
  }
  rep.eta = rep.gamma * rep.gamma / 16;
  double budget = std::ceil(2.0 / ((rep.gamma / 4) * (rep.gamma / 4)));
  rep.family_bound = 1 + 2 * graphs * budget;
  rep.log10_net_bound =
      K * rep.family_bound * std::log10(1.0 / rep.eta + 1.0);
  auto row = [&](const std::string& name, double thr) {
    rep.thresholds.push_back({name, thr, lambda <= thr + 1e-15});
  };
  row("completeness (lambda <= gamma)", rep.gamma);
  row("local membership, recovery (lambda <= gamma*eps)", rep.gamma * eps);
  row("regular family instantiation (lambda <= gamma^2/2500)",
      rep.gamma * rep.gamma / 2500);
  return rep;
}

}  // namespace expcodes
