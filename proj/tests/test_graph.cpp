#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "expcodes/graph.hpp"
#include "expcodes/rng.hpp"
#include "expcodes/spectral.hpp"

using namespace expcodes;

namespace {

// Independent singular-value oracle: one-sided Jacobi on the centered
// biadjacency matrix. Slow and dense, fine for n <= 64.
std::vector<double> singular_values_jacobi(const BipartiteGraph& g) {
  int n = g.n;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int l = 0; l < n; ++l)
    for (int r : g.left_adj[l]) a[l][r] += 1.0;
  // one-sided Jacobi orthogonalizes columns of a
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (int i = 0; i < n; ++i) {
          app += a[i][p] * a[i][p];
          aqq += a[i][q] * a[i][q];
          apq += a[i][p] * a[i][q];
        }
        off = std::max(off, std::abs(apq));
        if (std::abs(apq) < 1e-14) continue;
        double tau = (aqq - app) / (2 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (int i = 0; i < n; ++i) {
          double xp = a[i][p], xq = a[i][q];
          a[i][p] = c * xp - s * xq;
          a[i][q] = s * xp + c * xq;
        }
      }
    }
    if (off < 1e-13) break;
  }
  std::vector<double> sv(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i][j] * a[i][j];
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

}  // namespace

TEST_CASE("edge bijections round trip") {
  auto g = random_biregular(8, 3, 17);
  REQUIRE(g.n == 8);
  REQUIRE(g.d == 3);
  for (int l = 0; l < g.n; ++l) {
    for (int slot = 0; slot < g.d; ++slot) {
      int e = g.edge_at_left(l, slot);
      CHECK(g.left_of(e) == l);
      CHECK(g.left_slot_of(e) == slot);
      int r = g.right_of(e);
      int j = g.right_slot_of(e);
      CHECK(g.edge_at_right(r, j) == e);
    }
  }
  // right sides are biregular too
  for (int r = 0; r < g.n; ++r) CHECK((int)g.right_edges[r].size() == g.d);
}

TEST_CASE("from_left_adj validates") {
  // duplicate neighbor
  CHECK_THROWS_AS(BipartiteGraph::from_left_adj(2, 2, {{0, 0}, {0, 1}}),
                  std::invalid_argument);
  // right degree violation: both left vertices hit r=0 twice total at d=1
  CHECK_THROWS_AS(BipartiteGraph::from_left_adj(2, 1, {{0}, {0}}),
                  std::invalid_argument);
  // healthy 2-regular cycle on 2+2
  auto g = BipartiteGraph::from_left_adj(2, 2, {{0, 1}, {0, 1}});
  CHECK(g.right_edges[0].size() == 2);
}

TEST_CASE("complete bipartite graph has lambda zero") {
  for (int n : {2, 4, 7}) {
    auto g = complete_bipartite(n);
    auto prof = measure_lambda(g);
    CHECK(prof.sigma1 == doctest::Approx(n));
    CHECK(prof.sigma2 <= 1e-7);
    CHECK(prof.lambda <= 1e-7);
  }
}

TEST_CASE("disconnected union has lambda one") {
  // two disjoint copies of K_{2,2}: sigma2 = d = 2, lambda = 1
  auto g = BipartiteGraph::from_left_adj(4, 2, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  auto prof = measure_lambda(g);
  CHECK(prof.sigma2 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(prof.lambda == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("power iteration matches jacobi svd") {
  for (std::uint64_t seed : {1u, 5u, 9u}) {
    auto g = random_biregular(32, 8, seed);
    auto prof = measure_lambda(g);
    auto sv = singular_values_jacobi(g);
    CHECK(std::abs(sv[0] - g.d) <= 1e-8);
    CHECK(prof.sigma2 == doctest::Approx(sv[1]).epsilon(1e-6));
  }
}

TEST_CASE("edges_between counts match brute force") {
  auto g = random_biregular(10, 4, 3);
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    VSet S = empty_set(g.n), T = empty_set(g.n);
    for (int i = 0; i < g.n; ++i) {
      S[i] = rng.below(2) ? 1 : 0;
      T[i] = rng.below(2) ? 1 : 0;
    }
    long expect = 0;
    for (int l = 0; l < g.n; ++l)
      if (S[l])
        for (int r : g.left_adj[l])
          if (T[r]) ++expect;
    CHECK(edges_between(g, S, T) == expect);
  }
}

TEST_CASE("subgraph edge counting respects the mask") {
  auto g = random_biregular(8, 3, 21);
  auto sub = random_subgraph(g, 5);
  VSet S = full_set(g.n), T = full_set(g.n);
  long kept = 0;
  for (int e = 0; e < g.n * g.d; ++e)
    if (sub.keep[e]) ++kept;
  CHECK(edges_between(sub, S, T) == kept);
  CHECK(edges_between(full_subgraph(g), S, T) == (long)g.n * g.d);
  // determinism
  auto sub2 = random_subgraph(g, 5);
  CHECK(sub.keep == sub2.keep);
}

TEST_CASE("mixing audit finds no violations on true lambda") {
  for (std::uint64_t seed : {2u, 4u}) {
    auto g = random_biregular(16, 4, seed);
    auto prof = measure_lambda(g);
    auto rep = mixing_audit(g, prof.lambda, 500, seed + 100);
    CHECK(rep.trials == 500);
    CHECK(rep.violations == 0);
    CHECK(rep.max_violation <= 1e-9);
  }
  // a deflated lambda must produce violations on a graph that needs it
  auto g = BipartiteGraph::from_left_adj(4, 2, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
  auto rep = mixing_audit(g, 0.0, 500, 7);
  CHECK(rep.violations > 0);
  CHECK(rep.max_violation > 0);
}

TEST_CASE("random_biregular is simple biregular and seeded") {
  auto a = random_biregular(12, 5, 8);
  auto b = random_biregular(12, 5, 8);
  CHECK(a.left_adj == b.left_adj);
  auto c = random_biregular(12, 5, 9);
  CHECK(a.left_adj != c.left_adj);
  for (int l = 0; l < a.n; ++l) {
    CHECK((int)a.left_adj[l].size() == a.d);
    CHECK(std::is_sorted(a.left_adj[l].begin(), a.left_adj[l].end()));
    CHECK(std::adjacent_find(a.left_adj[l].begin(), a.left_adj[l].end()) ==
          a.left_adj[l].end());
  }
}

TEST_CASE("graph file round trip") {
  auto g = random_biregular(9, 4, 13);
  std::stringstream ss;
  save_graph(g, ss);
  auto back = load_graph(ss);
  CHECK(back.n == g.n);
  CHECK(back.d == g.d);
  CHECK(back.left_adj == g.left_adj);
  CHECK(back.right_edges == g.right_edges);
}
