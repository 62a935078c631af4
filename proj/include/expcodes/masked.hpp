#pragma once

#include <cstdint>
#include <vector>

#include "expcodes/graph.hpp"

namespace expcodes {

/// A real matrix supported on the edges of a parent graph; entries off E(G)
/// are identically zero by representation. Norms are taken under the uniform
/// edge measure mu_G.
struct MaskedMatrix {
  const BipartiteGraph* g = nullptr;
  std::vector<double> val;  // indexed by edge id

  static MaskedMatrix zeros(const BipartiteGraph& g);
  /// 1.0 on the kept edges of h, 0 elsewhere.
  static MaskedMatrix adjacency(const Subgraph& h);

  /// ||M||^2 under mu_G = (1/|E|) sum_e M_e^2.
  double norm_sq_mu() const;
};

/// A certified cut: value = 1_S^T M 1_T computed by plain summation.
struct CutWitness {
  VSet S, T;
  double value = 0.0;
};

/// 1_S^T M 1_T by direct summation over edges.
double cut_value(const MaskedMatrix& m, const VSet& S, const VSet& T);

/// Exact cut-norm witness: for each S subset of L (Gray-code enumeration)
/// the optimal T is read off column-sum signs, both sign branches included.
/// Cost 2^|L| * |E|; refuses sides larger than max_side.
CutWitness cut_norm_exact(const MaskedMatrix& m, int max_side = 22);

/// Exact cut-norm witness by branch and bound over S, heaviest rows first,
/// pruning on the optimistic column bound sum_j max(0, p_j + future positive
/// mass). With no stop goal it exhausts the tree, so the result is the true
/// maximum (both sign branches), but reaches sides the Gray scan cannot.
/// If stop_above is set, it returns the first witness strictly above the
/// goal; subtrees that cannot beat the goal are pruned, so a run that
/// exhausts certifies the true maximum is at most stop_above while naming
/// only the best cut it visited.
CutWitness cut_norm_exact_bb(const MaskedMatrix& m, double stop_above = -1.0,
                             int max_side = 48);

/// Local-search heuristic: one run seeds S by sign-rounding the top singular
/// vector, the rest seed randomly; each run alternates greedy side updates
/// until the value stops improving. Never exceeds the exact cut norm (its
/// output is a feasible witness, re-evaluated by summation).
CutWitness cut_norm_heuristic(const MaskedMatrix& m, std::uint64_t seed,
                              int restarts = 16);

/// Cut-norm oracle handle for the decomposition loop: best_cut finds a
/// witness, alpha() is the approximation factor the caller may assume
/// (found value >= alpha * true max whenever the true max matters).
class CutOracle {
 public:
  virtual ~CutOracle() = default;
  virtual CutWitness best_cut(const MaskedMatrix& m) const = 0;
  virtual double alpha() const = 0;
};

class ExactCutOracle : public CutOracle {
 public:
  explicit ExactCutOracle(int max_side = 22) : max_side_(max_side) {}
  CutWitness best_cut(const MaskedMatrix& m) const override {
    return cut_norm_exact(m, max_side_);
  }
  double alpha() const override { return 1.0; }

 private:
  int max_side_;
};

/// Branch-and-bound exact oracle for sides beyond the Gray scan. With a
/// stop goal set, above-goal steps may return any witness past the goal;
/// the termination decision (no cut above goal) is still exact, which is
/// all the decomposition loop consumes.
class BranchBoundCutOracle : public CutOracle {
 public:
  explicit BranchBoundCutOracle(double stop_above = -1.0, int max_side = 48)
      : stop_above_(stop_above), max_side_(max_side) {}
  CutWitness best_cut(const MaskedMatrix& m) const override {
    return cut_norm_exact_bb(m, stop_above_, max_side_);
  }
  double alpha() const override { return 1.0; }

 private:
  double stop_above_;
  int max_side_;
};

/// alpha_an = 0.03 is the constant the semidefinite rounding of Alon and
/// Naor guarantees; our local search is benchmarked against it rather than
/// proved, so callers may also declare a factor of their own.
inline constexpr double kAlphaAn = 0.03;

class HeuristicCutOracle : public CutOracle {
 public:
  HeuristicCutOracle(std::uint64_t seed, int restarts = 16,
                     double declared_alpha = kAlphaAn)
      : seed_(seed), restarts_(restarts), alpha_(declared_alpha) {}
  CutWitness best_cut(const MaskedMatrix& m) const override {
    return cut_norm_heuristic(m, seed_, restarts_);
  }
  double alpha() const override { return alpha_; }

 private:
  std::uint64_t seed_;
  int restarts_;
  double alpha_;
};

}  // namespace expcodes
