#pragma once

#include <optional>
#include <vector>

#include "expcodes/regularity.hpp"

namespace expcodes {

/// The sigma-algebra generated by a function family: elements of [0, n)
/// grouped by their membership bit pattern across the family's sets. Only
/// nonempty atoms are kept; within an atom, elements stay in ascending
/// order.
struct Factor {
  int n = 0;
  std::vector<int> atom_of;             // element -> atom id
  std::vector<std::vector<int>> atoms;  // atom id -> elements

  int blocks() const { return static_cast<int>(atoms.size()); }
};

Factor build_factor(const FunctionFamily& fam);

/// A function measurable with respect to a factor: one value per atom.
using AtomFn = std::vector<double>;

/// E[f | B]: the average of f over each atom.
AtomFn conditional_average(const std::vector<double>& f, const Factor& b);

/// Pointwise evaluation of an atom function.
std::vector<double> to_pointwise(const AtomFn& f, const Factor& b);
std::vector<double> to_real(const VSet& s);

/// sigma(f)_j = <f, 1_{S_j}> under the uniform measure on [0, n).
std::vector<double> signature_of(const std::vector<double>& f,
                                 const FunctionFamily& fam);
std::vector<double> signature_of(const VSet& s, const FunctionFamily& fam);

/// ||f1 - f2||_F = max_j |<1_{S_j}, f1 - f2>|.
double family_distance(const std::vector<double>& f1,
                       const std::vector<double>& f2,
                       const FunctionFamily& fam);

/// Searches for measurable f_1..f_K with values in [0,1], sum at most one
/// on every atom, and |sigma_ij - <f_i, 1_{S_j}>| <= eta for all i, j.
/// The LP is a pure feasibility problem; any vertex works.
std::optional<std::vector<AtomFn>> realize_signature(
    const std::vector<std::vector<double>>& sigma, const FunctionFamily& fam,
    const Factor& b, double eta);

/// Rounds fractional atom functions to disjoint vertex sets: inside each
/// atom (ascending elements) set i takes the next floor(|P| * f_i(P))
/// elements. The rounding error is at most |B| / n per set in F-norm.
std::vector<VSet> round_to_sets(const std::vector<AtomFn>& fbar, const Factor& b);

}  // namespace expcodes
