#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace expcodes {

/// Indicator vector over a vertex side (index -> 0/1).
using VSet = std::vector<std::uint8_t>;

VSet full_set(int n);
VSet empty_set(int n);
VSet set_from_indices(int n, const std::vector<int>& idx);
std::vector<int> indices_of(const VSet& s);
int set_size(const VSet& s);

/// d-regular bipartite graph with n vertices per side and no parallel edges.
///
/// Edges are identified with [0, n*d): edge e = l*d + slot, where
/// left_adj[l][slot] is the slot-th smallest right neighbor of l. This fixes
/// the bijection E <-> L x [d]; the right-side bijection E <-> R x [d] lists
/// each right vertex's incident edges in ascending edge id.
struct BipartiteGraph {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> left_adj;    // n rows of d sorted neighbors
  std::vector<std::vector<int>> right_edges; // n rows of d edge ids
  std::vector<int> right_slot;               // per edge: slot within its right vertex

  int num_edges() const { return n * d; }
  int edge_at_left(int l, int slot) const { return l * d + slot; }
  int left_of(int e) const { return e / d; }
  int left_slot_of(int e) const { return e % d; }
  int right_of(int e) const { return left_adj[e / d][e % d]; }
  int edge_at_right(int r, int j) const { return right_edges[r][j]; }
  int right_slot_of(int e) const { return right_slot[e]; }

  /// Validates biregularity and simplicity, sorts adjacency, builds the
  /// right-side tables.
  static BipartiteGraph from_left_adj(int n, int d,
                                      std::vector<std::vector<int>> adj);
};

/// Union of d seeded random perfect matchings, resampled until simple.
/// Throws after max_attempts failures (tight for d close to n).
BipartiteGraph random_biregular(int n, int d, std::uint64_t seed,
                                int max_attempts = 1000);

/// K_{n,n}; the unique simple graph with d = n.
BipartiteGraph complete_bipartite(int n);

/// Exact number of edges with left endpoint in S and right endpoint in T.
long long edges_between(const BipartiteGraph& g, const VSet& S, const VSet& T);

/// An edge-subset view of a parent graph.
struct Subgraph {
  const BipartiteGraph* parent = nullptr;
  std::vector<std::uint8_t> keep;  // per edge id

  int num_kept() const;
};

Subgraph full_subgraph(const BipartiteGraph& g);
Subgraph random_subgraph(const BipartiteGraph& g, std::uint64_t seed);
long long edges_between(const Subgraph& h, const VSet& S, const VSet& T);

/// Text format: header "n d", then n*d lines "l slot r" in edge-id order.
void save_graph(const BipartiteGraph& g, std::ostream& os);
BipartiteGraph load_graph(std::istream& is);
void save_graph_file(const BipartiteGraph& g, const std::string& path);
BipartiteGraph load_graph_file(const std::string& path);

}  // namespace expcodes
