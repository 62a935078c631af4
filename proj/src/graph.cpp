#include "expcodes/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "expcodes/rng.hpp"

namespace expcodes {

VSet full_set(int n) { return VSet(n, 1); }
VSet empty_set(int n) { return VSet(n, 0); }

VSet set_from_indices(int n, const std::vector<int>& idx) {
  VSet s(n, 0);
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::out_of_range("set_from_indices: index out of range");
    s[i] = 1;
  }
  return s;
}

std::vector<int> indices_of(const VSet& s) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i]) out.push_back(i);
  return out;
}

int set_size(const VSet& s) {
  int c = 0;
  for (auto v : s) c += v != 0;
  return c;
}

BipartiteGraph BipartiteGraph::from_left_adj(int n, int d,
                                             std::vector<std::vector<int>> adj) {
  if (n < 1 || d < 1 || d > n)
    throw std::invalid_argument("BipartiteGraph: need 1 <= d <= n");
  if (static_cast<int>(adj.size()) != n)
    throw std::invalid_argument("BipartiteGraph: wrong number of left vertices");
  std::vector<int> right_deg(n, 0);
  for (auto& nb : adj) {
    if (static_cast<int>(nb.size()) != d)
      throw std::invalid_argument("BipartiteGraph: left degree != d");
    std::sort(nb.begin(), nb.end());
    for (int j = 0; j < d; ++j) {
      if (nb[j] < 0 || nb[j] >= n)
        throw std::invalid_argument("BipartiteGraph: right vertex out of range");
      if (j > 0 && nb[j] == nb[j - 1])
        throw std::invalid_argument("BipartiteGraph: parallel edge");
      ++right_deg[nb[j]];
    }
  }
  for (int r = 0; r < n; ++r)
    if (right_deg[r] != d)
      throw std::invalid_argument("BipartiteGraph: right degree != d");

  BipartiteGraph g;
  g.n = n;
  g.d = d;
  g.left_adj = std::move(adj);
  g.right_edges.assign(n, {});
  for (int r = 0; r < n; ++r) g.right_edges[r].reserve(d);
  g.right_slot.assign(n * d, -1);
  for (int e = 0; e < n * d; ++e) {
    int r = g.left_adj[e / d][e % d];
    g.right_slot[e] = static_cast<int>(g.right_edges[r].size());
    g.right_edges[r].push_back(e);  // ascending edge id by construction
  }
  return g;
}

BipartiteGraph random_biregular(int n, int d, std::uint64_t seed, int max_attempts) {
  if (n < 1 || d < 1 || d > n)
    throw std::invalid_argument("random_biregular: need 1 <= d <= n");
  // d = n admits exactly one simple graph
  if (d == n) return complete_bipartite(n);
  Rng rng(seed);
  // Union of d random perfect matchings. A fresh matching usually collides
  // with the ones already placed, so each is repaired by value swaps: a swap
  // is kept only when it lowers the number of conflicted positions.
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<int>> adj(n);
    bool stuck = false;
    for (int m = 0; m < d && !stuck; ++m) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      rng.shuffle(perm);
      auto conflicted = [&](int l) {
        const auto& nb = adj[l];
        return std::find(nb.begin(), nb.end(), perm[l]) != nb.end();
      };
      long long repairs = 0;
      const long long repair_cap = 200LL * n + 1000;
      for (int l = 0; l < n; ++l) {
        while (conflicted(l)) {
          if (++repairs > repair_cap) {
            stuck = true;
            break;
          }
          int l2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
          if (l2 == l) continue;
          std::swap(perm[l], perm[l2]);
          if (conflicted(l) || conflicted(l2)) std::swap(perm[l], perm[l2]);
        }
        if (stuck) break;
      }
      if (stuck) break;
      for (int l = 0; l < n; ++l) adj[l].push_back(perm[l]);
    }
    if (!stuck) return BipartiteGraph::from_left_adj(n, d, std::move(adj));
  }
  throw std::runtime_error("random_biregular: no simple graph found within attempt cap");
}

BipartiteGraph complete_bipartite(int n) {
  std::vector<std::vector<int>> adj(n);
  for (int l = 0; l < n; ++l)
    for (int r = 0; r < n; ++r) adj[l].push_back(r);
  return BipartiteGraph::from_left_adj(n, n, std::move(adj));
}

long long edges_between(const BipartiteGraph& g, const VSet& S, const VSet& T) {
  if (static_cast<int>(S.size()) != g.n || static_cast<int>(T.size()) != g.n)
    throw std::invalid_argument("edges_between: set size mismatch");
  long long count = 0;
  for (int l = 0; l < g.n; ++l) {
    if (!S[l]) continue;
    for (int r : g.left_adj[l]) count += T[r] != 0;
  }
  return count;
}

int Subgraph::num_kept() const {
  int c = 0;
  for (auto v : keep) c += v != 0;
  return c;
}

Subgraph full_subgraph(const BipartiteGraph& g) {
  return Subgraph{&g, std::vector<std::uint8_t>(g.num_edges(), 1)};
}

Subgraph random_subgraph(const BipartiteGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  Subgraph h{&g, std::vector<std::uint8_t>(g.num_edges())};
  for (auto& b : h.keep) b = static_cast<std::uint8_t>(rng.next() & 1);
  return h;
}

long long edges_between(const Subgraph& h, const VSet& S, const VSet& T) {
  const BipartiteGraph& g = *h.parent;
  long long count = 0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (h.keep[e] && S[g.left_of(e)] && T[g.right_of(e)]) ++count;
  return count;
}

void save_graph(const BipartiteGraph& g, std::ostream& os) {
  os << g.n << ' ' << g.d << '\n';
  for (int e = 0; e < g.num_edges(); ++e)
    os << g.left_of(e) << ' ' << g.left_slot_of(e) << ' ' << g.right_of(e) << '\n';
}

BipartiteGraph load_graph(std::istream& is) {
  int n, d;
  if (!(is >> n >> d)) throw std::runtime_error("load_graph: bad header");
  if (n < 1 || d < 1 || d > n) throw std::runtime_error("load_graph: bad dimensions");
  std::vector<std::vector<int>> adj(n, std::vector<int>(d, -1));
  for (int e = 0; e < n * d; ++e) {
    int l, slot, r;
    if (!(is >> l >> slot >> r)) throw std::runtime_error("load_graph: truncated edge list");
    if (l != e / d || slot != e % d)
      throw std::runtime_error("load_graph: edges out of order");
    adj[l][slot] = r;
  }
  // from_left_adj re-validates; reject files whose slots are not sorted,
  // since edge ids must be stable under a save/load round trip
  auto sorted = adj;
  BipartiteGraph g = BipartiteGraph::from_left_adj(n, d, std::move(sorted));
  if (g.left_adj != adj) throw std::runtime_error("load_graph: slots not in sorted order");
  return g;
}

void save_graph_file(const BipartiteGraph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_graph_file: cannot open " + path);
  save_graph(g, os);
}

BipartiteGraph load_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_graph_file: cannot open " + path);
  return load_graph(is);
}

}  // namespace expcodes
