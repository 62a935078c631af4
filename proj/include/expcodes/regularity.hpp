#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "expcodes/masked.hpp"

namespace expcodes {

/// One step of the decomposition: subtract c on E(G) restricted to S x T.
struct CutTriple {
  double c = 0.0;
  VSet S, T;
};

/// H approximated by sum_i c_i [1_{S_i} 1_{T_i}^T]_{E(G)} with residual cut
/// norm at most gamma * |E(G)| as certified by the oracle that drove it.
struct RegularityDecomposition {
  std::vector<CutTriple> triples;
  double gamma = 0.0;
  double alpha = 1.0;
  /// ||M_j||^2 under mu_G for j = 0..p; each step drops by >= (alpha*gamma)^2.
  std::vector<double> potential;
};

class DecompositionBudgetError : public std::runtime_error {
 public:
  DecompositionBudgetError(std::string what, RegularityDecomposition partial)
      : std::runtime_error(std::move(what)), partial(std::move(partial)) {}
  RegularityDecomposition partial;
};

/// Frieze-Kannan style loop: while the oracle finds a cut above
/// alpha * gamma * |E(G)|, subtract alpha * gamma * sign(value) on it.
/// max_iters < 0 selects the default budget ceil(2 / (alpha*gamma)^2);
/// exceeding the budget raises DecompositionBudgetError with the partial
/// decomposition attached.
RegularityDecomposition regularity_decompose(const Subgraph& h, double gamma,
                                             const CutOracle& oracle,
                                             long long max_iters = -1);

/// A_H - sum_i c_i [1_{S_i} 1_{T_i}^T]_{E(G)}.
MaskedMatrix residual_matrix(const Subgraph& h, const RegularityDecomposition& d);

/// E_H(S,T) - sum_i c_i E_G(S_i cap S, T_i cap T), via exact edge counts.
double residual_cut_value(const Subgraph& h, const RegularityDecomposition& d,
                          const VSet& S, const VSet& T);

/// Finite set of left-vertex indicators; contains 1_L and holds no
/// duplicates. sets[0] is always 1_L.
struct FunctionFamily {
  int n = 0;
  std::vector<VSet> sets;

  int size() const { return static_cast<int>(sets.size()); }
};

/// Dedupes and puts 1_L first; order is otherwise first occurrence.
FunctionFamily make_family(int n, const std::vector<VSet>& sets);

FunctionFamily family_union(const std::vector<FunctionFamily>& families);

struct RegularFamilyResult {
  FunctionFamily family;
  double eta = 0.0;
  /// whether the measured lambda is small enough (<= alpha * gamma^2 / 32)
  /// for the family to be provably (eta, gamma)-regular for H
  bool lambda_ok = false;
};

/// Decomposes H at accuracy gamma / 4 and returns the left-side sets plus
/// 1_L, with eta = alpha * gamma^2 / 16.
RegularFamilyResult regular_family(const Subgraph& h, double gamma,
                                   const CutOracle& oracle, double lambda);

/// One triple per line: c |S| |T| followed by both index sets.
void dump_decomposition(const RegularityDecomposition& d, std::ostream& os);

}  // namespace expcodes
