#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expcodes/ael.hpp"
#include "expcodes/tanner.hpp"

namespace expcodes {

// Ground-truth distances, re-implemented here on purpose: the oracles must
// not share code paths with the decoders they judge. Cross-checked against
// the linear-code module once, in the oracle tests.

/// Fraction of positions where x and y differ.
double oracle_distance(const Word& x, const Word& y);

/// Fraction of length-d blocks (fold order) where x and y differ.
double oracle_block_distance(const Word& x, const Word& y, int n, int d);

/// Fraction of right vertices whose candidate list omits h's folded block.
double oracle_miss_fraction(const RecoveryInput& input, const Word& h, int n,
                            int d);

// Exhaustive lists: every codeword of the given code within the radius,
// sorted lexicographically. Exponential in the code dimension.

std::vector<Word> tanner_global_list(const TannerCode& t, const Word& g,
                                     double radius);
std::vector<FoldedWord> ael_global_list(const AELCode& a, const FoldedWord& g,
                                        double beta);
std::vector<FoldedWord> ael_global_recover_list(const AELCode& a,
                                                const RecoveryInput& input,
                                                double beta);

// Planted instances. Corruption counts are exact (floor(beta * positions)),
// corrupted positions are drawn uniformly without replacement, and every
// replacement symbol or block is uniform over the values different from the
// original. Deterministic per seed.

struct TannerPlant {
  Word codeword;
  Word received;
  std::uint64_t seed = 0;
};
/// floor(beta * nd) edge symbols changed.
TannerPlant plant_tanner_edges(const TannerCode& t, double beta,
                               std::uint64_t seed);

struct TannerAssignmentPlant {
  Word codeword;
  LeftAssignment assignment;
  /// realized fractions
  double corrupted = 0.0;
  double erased = 0.0;
  std::uint64_t seed = 0;
};
/// floor(s * n) left vertices erased and floor(terr * n) others replaced by
/// a uniformly chosen different left-code codeword.
TannerAssignmentPlant plant_tanner_assignment(const TannerCode& t, double terr,
                                              double s, std::uint64_t seed);

struct AelPlant {
  FoldedWord codeword;
  FoldedWord received;
  std::uint64_t seed = 0;
};
/// floor(beta * n) right blocks overwritten by a different uniform block.
AelPlant plant_ael(const AELCode& a, double beta, std::uint64_t seed);

struct AelRecoveryPlant {
  FoldedWord codeword;
  RecoveryInput input;
  /// right vertices whose list omits the planted block
  std::vector<int> missing;
  std::uint64_t seed = 0;
};
/// k distinct candidate blocks per right vertex; exactly ceil((1-beta) * n)
/// of the lists contain the planted block, fillers never equal it.
AelRecoveryPlant plant_ael_recovery(const AELCode& a, int k, double beta,
                                    std::uint64_t seed);

/// Supports A_i = {l : lists[l][i] = h's block at l}; disjoint whenever the
/// per-vertex list entries are distinct. h is folded for the AEL overload
/// and an edge word for the Tanner overload.
std::vector<VSet> left_candidate_supports(
    const AELCode& a, const std::vector<std::vector<Word>>& lists,
    const FoldedWord& h);
std::vector<VSet> left_candidate_supports(
    const TannerCode& t, const std::vector<std::vector<Word>>& lists,
    const Word& h);

// Lemma audits: re-derive the statement's objects from a planted instance,
// check its preconditions against measured quantities, and evaluate both
// sides of its bound. Preconditions failing is reported, never asserted.

struct LemmaReport {
  std::string lemma;
  bool precondition_met = false;
  /// measured side of the inequality and the bound the statement promises
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  /// slack nonnegative, or nothing to check because a precondition failed
  bool pass = false;
};

struct AuditConfig {
  /// corruption rate the statement is instantiated at (block / miss rate)
  double beta = 0.0;
  double eps = 0.05;
  /// > 0 replaces the per-lemma default gamma
  double gamma_override = -1.0;
  /// padded list size; -1 takes the exhaustive maximum
  int K = -1;
  /// candidate S-tuples sampled per rigidity audit
  int tuples = 24;
  std::uint64_t seed = 0;
};

/// ids: local-membership (left lists at beta + eps miss h on at most a
/// gamma fraction of vertices when lambda <= gamma eps) and ael-rigidity
/// (disjoint sets within the family's eta of the agreement supports differ
/// from them by at most (2 K gamma / eps) n in total when lambda <= gamma).
LemmaReport lemma_audit(const std::string& id, const AELCode& a,
                        const AelPlant& p, const AuditConfig& cfg);

/// ids: local-membership-lr and ael-rigidity-lr, the list-recovery forms;
/// the rigidity bound becomes (3 k K gamma / eps) n.
LemmaReport lemma_audit(const std::string& id, const AELCode& a,
                        const AelRecoveryPlant& p, const AuditConfig& cfg);

/// ids: local-presence (a codeword within min(d1 d2dec, d1dec d2) - eps of
/// g appears in all but a delta2 - eps fraction of left lists and all but a
/// delta1 - eps fraction of right lists, no lambda precondition) and
/// tanner-rigidity (bound (3 K1 K2 gamma / eps) n).
LemmaReport lemma_audit(const std::string& id, const TannerCode& t,
                        const TannerPlant& p, const AuditConfig& cfg);

}  // namespace expcodes
