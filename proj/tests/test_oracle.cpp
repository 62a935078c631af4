#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "expcodes/oracle.hpp"
#include "expcodes/outer.hpp"
#include "expcodes/rng.hpp"

using namespace expcodes;

namespace {

LinearCode repetition_code(int d, std::uint32_t q = 2) {
  return LinearCode(Field(q), {Word(d, 1)});
}

// [d, d-1, 2] single parity check code over GF(2)
LinearCode parity_code(int d) {
  GfMatrix gen(d - 1, Word(d, 0));
  for (int i = 0; i < d - 1; ++i) {
    gen[i][i] = 1;
    gen[i][d - 1] = 1;
  }
  return LinearCode(Field(2), gen);
}

const BipartiteGraph& kgraph(int n) {
  static std::map<int, BipartiteGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, complete_bipartite(n)).first;
  return it->second;
}

AELCode constant_ael(int n, std::uint32_t q = 2) {
  auto outer =
      std::make_shared<BruteForceOuterCode>(repetition_code(n, q), n);
  return AELCode(kgraph(n), repetition_code(n, q), outer);
}

TannerCode parity_tensor(int n) {
  return TannerCode(kgraph(n), parity_code(n), parity_code(n));
}

Word random_word(int len, std::uint32_t q, std::uint64_t seed) {
  Rng rng(seed);
  Word w(len);
  for (auto& s : w) s = static_cast<symbol>(rng.below(q));
  return w;
}

}  // namespace

TEST_CASE("oracle distances agree with the library implementations") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Word a = random_word(12, 3, 100 + trial);
    Word b = random_word(12, 3, 200 + trial);
    CHECK(oracle_distance(a, b) == doctest::Approx(fractional_distance(a, b)));
    CHECK(oracle_block_distance(a, b, 4, 3) ==
          doctest::Approx(delta_r(a, b, 4, 3)));
    CHECK(oracle_block_distance(a, b, 3, 4) ==
          doctest::Approx(delta_r(a, b, 3, 4)));
  }
  CHECK(oracle_distance({1, 2}, {1, 2}) == 0.0);
  CHECK_THROWS_AS(oracle_distance({1}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(oracle_block_distance({1, 2}, {1, 2}, 2, 2),
                  std::invalid_argument);
}

TEST_CASE("miss fraction counts omitted blocks") {
  // n=3, d=2: blocks (0,0), (1,1), (2,2)
  Word h = {0, 0, 1, 1, 2, 2};
  RecoveryInput input = {{{0, 0}, {1, 1}}, {{0, 0}}, {{2, 2}, {0, 1}}};
  CHECK(oracle_miss_fraction(input, h, 3, 2) == doctest::Approx(1.0 / 3));
  input[1] = {{1, 1}};
  CHECK(oracle_miss_fraction(input, h, 3, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(oracle_miss_fraction(input, h, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle_miss_fraction(input, Word{0, 0}, 3, 2),
                  std::invalid_argument);
}

TEST_CASE("tanner global list filters the tensor code by hand") {
  TannerCode t = parity_tensor(3);
  auto basis = tanner_basis(t);
  REQUIRE(basis.has_value());
  std::vector<Word> all = enumerate_codewords(*basis);
  REQUIRE(all.size() == 16);

  Word g = random_word(9, 2, 7);
  for (double radius : {0.0, 3.0 / 9, 1.0}) {
    std::vector<Word> hand;
    for (const Word& h : all)
      if (fractional_distance(g, h) <= radius + 1e-12) hand.push_back(h);
    std::sort(hand.begin(), hand.end());
    CHECK(tanner_global_list(t, g, radius) == hand);
  }
  // a codeword at radius zero is its own singleton list
  CHECK(tanner_global_list(t, all[5], 0.0) == std::vector<Word>{all[5]});
  CHECK(tanner_global_list(t, g, 1.0).size() == 16);
  CHECK_THROWS_AS(tanner_global_list(t, Word(4, 0), 0.5),
                  std::invalid_argument);
}

TEST_CASE("ael global lists match manual filters") {
  AELCode a = constant_ael(4, 3);
  std::vector<FoldedWord> all;
  a.outer().for_each(
      [&](const OuterWord& w) { all.push_back(ael_encode(a, w)); });
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() == 3);

  FoldedWord g = all[1];
  g[0] = 2;  // corrupt one symbol, hence one block
  std::vector<FoldedWord> hand;
  for (const auto& h : all)
    if (delta_r(g, h, a.n(), a.d()) <= 0.25 + 1e-12) hand.push_back(h);
  CHECK(ael_global_list(a, g, 0.25) == hand);
  CHECK(ael_global_list(a, g, 1.0).size() == 3);
  CHECK_THROWS_AS(ael_global_list(a, Word(3, 0), 0.5), std::invalid_argument);

  RecoveryInput input(a.n());
  for (int r = 0; r < a.n(); ++r)
    input[r] = {Word(a.d(), 0), Word(a.d(), 1)};
  auto recovered = ael_global_recover_list(a, input, 0.0);
  CHECK(recovered == std::vector<FoldedWord>{all[0], all[1]});
  CHECK(ael_global_recover_list(a, input, 1.0).size() == 3);
}

TEST_CASE("edge plants hit exact counts with changed symbols") {
  TannerCode t = parity_tensor(3);
  auto zero = plant_tanner_edges(t, 0.0, 5);
  CHECK(zero.received == zero.codeword);
  CHECK(tanner_membership(t, zero.codeword));

  auto p = plant_tanner_edges(t, 0.34, 5);  // floor(0.34 * 9) = 3 edges
  CHECK(tanner_membership(t, p.codeword));
  int diff = 0;
  for (int e = 0; e < 9; ++e)
    if (p.received[e] != p.codeword[e]) ++diff;
  CHECK(diff == 3);

  auto again = plant_tanner_edges(t, 0.34, 5);
  CHECK(again.codeword == p.codeword);
  CHECK(again.received == p.received);
  CHECK(plant_tanner_edges(t, 0.34, 6).received != p.received);
  CHECK_THROWS_AS(plant_tanner_edges(t, 1.5, 0), std::invalid_argument);
}

TEST_CASE("assignment plants erase and corrupt disjoint vertices") {
  TannerCode t = parity_tensor(4);
  auto p = plant_tanner_assignment(t, 0.25, 0.5, 11);
  CHECK(p.corrupted == doctest::Approx(0.25));
  CHECK(p.erased == doctest::Approx(0.5));
  int erased = 0, corrupted = 0;
  for (int l = 0; l < t.n(); ++l) {
    Word truth(t.d());
    for (int s = 0; s < t.d(); ++s)
      truth[s] = p.codeword[t.graph().edge_at_left(l, s)];
    if (p.assignment[l].empty()) {
      ++erased;
    } else if (p.assignment[l] != truth) {
      ++corrupted;
      CHECK(t.left_code().is_codeword(p.assignment[l]));
    }
  }
  CHECK(erased == 2);
  CHECK(corrupted == 1);
  CHECK_THROWS_AS(plant_tanner_assignment(t, 0.7, 0.7, 0),
                  std::invalid_argument);
}

TEST_CASE("block plants corrupt whole right blocks") {
  AELCode a = constant_ael(4, 3);
  auto clean = plant_ael(a, 0.0, 3);
  CHECK(clean.received == clean.codeword);
  CHECK(ael_membership(a, clean.codeword));

  auto p = plant_ael(a, 0.5, 3);
  CHECK(oracle_block_distance(p.received, p.codeword, 4, 4) ==
        doctest::Approx(0.5));
  auto all_wrong = plant_ael(a, 1.0, 4);
  CHECK(oracle_block_distance(all_wrong.received, all_wrong.codeword, 4, 4) ==
        doctest::Approx(1.0));
  auto again = plant_ael(a, 0.5, 3);
  CHECK(again.received == p.received);
}

TEST_CASE("recovery plants cover exactly the promised blocks") {
  AELCode a = constant_ael(4, 3);
  for (double beta : {0.0, 0.3, 0.5, 1.0}) {
    auto p = plant_ael_recovery(a, 2, beta, 17);
    int expect_contain = static_cast<int>(std::ceil((1.0 - beta) * 4 - 1e-9));
    int contain = 0;
    for (int r = 0; r < 4; ++r) {
      REQUIRE(p.input[r].size() == 2);
      CHECK(p.input[r][0] != p.input[r][1]);
      Word block(p.codeword.begin() + r * 4, p.codeword.begin() + (r + 1) * 4);
      bool has = p.input[r][0] == block || p.input[r][1] == block;
      if (has) ++contain;
      bool listed_missing =
          std::find(p.missing.begin(), p.missing.end(), r) != p.missing.end();
      CHECK(has == !listed_missing);
    }
    CHECK(contain == expect_contain);
  }
  CHECK_THROWS_AS(plant_ael_recovery(a, 0, 0.5, 0), std::invalid_argument);
  // GF(2) length-1 blocks only have two values: no room for a missing list
  auto tiny = constant_ael(1, 2);
  CHECK_THROWS_AS(plant_ael_recovery(tiny, 2, 1.0, 0), std::invalid_argument);
  CHECK_NOTHROW(plant_ael_recovery(tiny, 2, 0.0, 0));
}

TEST_CASE("candidate supports mark exactly the matching list slots") {
  AELCode a = constant_ael(3, 3);
  auto p = plant_ael(a, 1.0 / 3, 21);
  auto lists = local_lists_left(a, p.received, 0.5, 2);
  auto A = left_candidate_supports(a, lists, p.codeword);
  REQUIRE(A.size() == 2);

  Word h_edges = unfold(a, p.codeword);
  for (int l = 0; l < 3; ++l) {
    Word block(3);
    for (int s = 0; s < 3; ++s) block[s] = h_edges[a.graph().edge_at_left(l, s)];
    for (int i = 0; i < 2; ++i)
      CHECK(static_cast<bool>(A[i][l]) == (lists[l][i] == block));
    // padded lists are distinct, so the supports stay disjoint
    CHECK(A[0][l] + A[1][l] <= 1);
  }

  std::vector<std::vector<Word>> ragged = lists;
  ragged[1].pop_back();
  CHECK_THROWS_AS(left_candidate_supports(a, ragged, p.codeword),
                  std::invalid_argument);
}

TEST_CASE("membership audits pass with slack on mixing-free instances") {
  AELCode a = constant_ael(4, 3);
  AuditConfig cfg;
  cfg.beta = 0.25;
  cfg.eps = 0.25;
  auto p = plant_ael(a, cfg.beta, 33);
  auto rep = lemma_audit("local-membership", a, p, cfg);
  CHECK(rep.lemma == "local-membership");
  CHECK(rep.precondition_met);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.slack >= 0.0);
  CHECK(rep.pass);

  auto rp = plant_ael_recovery(a, 2, cfg.beta, 34);
  auto rep2 = lemma_audit("local-membership-lr", a, rp, cfg);
  CHECK(rep2.precondition_met);
  CHECK(rep2.lhs == 0.0);
  CHECK(rep2.pass);
}

TEST_CASE("audits report unmet preconditions without asserting") {
  auto g = random_biregular(6, 3, 99);
  auto outer =
      std::make_shared<BruteForceOuterCode>(repetition_code(6, 2), 6);
  AELCode a(g, repetition_code(3, 2), outer);
  REQUIRE(a.lambda() > 0.01);

  AuditConfig cfg;
  cfg.beta = 0.0;
  cfg.eps = 0.2;
  cfg.gamma_override = 0.01;  // lambda > gamma * eps, so the claim is idle
  auto p = plant_ael(a, 0.0, 1);
  auto rep = lemma_audit("local-membership", a, p, cfg);
  CHECK_FALSE(rep.precondition_met);
  CHECK(rep.pass);

  CHECK_THROWS_AS(lemma_audit("no-such-lemma", a, p, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(lemma_audit("local-presence", a, p, cfg),
                  std::invalid_argument);
}

TEST_CASE("rigidity audits bound the excess over the supports") {
  AELCode a = constant_ael(4, 3);
  AuditConfig cfg;
  cfg.beta = 0.25;
  cfg.eps = 0.25;
  cfg.gamma_override = 0.5;
  cfg.seed = 7;
  auto p = plant_ael(a, cfg.beta, 41);
  auto rep = lemma_audit("ael-rigidity", a, p, cfg);
  CHECK(rep.precondition_met);
  CHECK(rep.pass);
  CHECK(rep.slack >= 0.0);
  CHECK(rep.rhs > 0.0);

  auto rp = plant_ael_recovery(a, 2, cfg.beta, 42);
  auto rep2 = lemma_audit("ael-rigidity-lr", a, rp, cfg);
  CHECK(rep2.precondition_met);
  CHECK(rep2.pass);

  // beta past delta_in - eps breaks the hypothesis, never the audit
  AuditConfig wide = cfg;
  wide.beta = 0.9;
  auto pw = plant_ael(a, 0.25, 43);
  auto rep3 = lemma_audit("ael-rigidity", a, pw, wide);
  CHECK_FALSE(rep3.precondition_met);
  CHECK(rep3.pass);
}

TEST_CASE("tanner audits cover presence and rigidity") {
  TannerCode t = parity_tensor(3);
  AuditConfig cfg;
  cfg.eps = 0.1;
  cfg.seed = 3;
  // radius min(d1 d2dec, d1dec d2) - eps = 2/9 - 0.1, one edge fits
  auto p = plant_tanner_edges(t, 1.0 / 9, 51);
  auto rep = lemma_audit("local-presence", t, p, cfg);
  CHECK(rep.precondition_met);
  CHECK(rep.pass);
  CHECK(rep.slack >= 0.0);

  AuditConfig rig = cfg;
  rig.gamma_override = 0.5;
  auto rep2 = lemma_audit("tanner-rigidity", t, p, rig);
  CHECK(rep2.precondition_met);
  CHECK(rep2.pass);

  // a received word too far from the codeword leaves nothing to audit
  auto far = plant_tanner_edges(t, 0.9, 52);
  auto rep3 = lemma_audit("local-presence", t, far, cfg);
  CHECK_FALSE(rep3.precondition_met);
  CHECK(rep3.pass);
  CHECK_THROWS_AS(lemma_audit("ael-rigidity", t, p, cfg),
                  std::invalid_argument);
}

TEST_CASE("decoder output equals the global list oracle on clean instances") {
  AELCode a = constant_ael(3, 3);
  AelParams params;
  params.gamma_override = 0.5;
  params.eta_override = 2.0;
  BranchBoundCutOracle oracle;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto p = plant_ael(a, 1.0 / 3, 60 + seed);
    auto rep = list_decode_ael(a, p.received, 1.0 / 3, 0.25, oracle, params);
    CHECK(rep.list == ael_global_list(a, p.received, 1.0 / 3));
  }
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto rp = plant_ael_recovery(a, 2, 1.0 / 3, 80 + seed);
    auto rep =
        list_recover_ael(a, rp.input, 2, 1.0 / 3, 0.2, oracle, params);
    CHECK(rep.list == ael_global_recover_list(a, rp.input, 1.0 / 3));
  }
}
