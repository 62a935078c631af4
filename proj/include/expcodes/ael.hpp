#pragma once

#include <memory>
#include <string>

#include "expcodes/outer.hpp"

namespace expcodes {

/// Distance-amplified code: an outer codeword places one inner codeword on
/// each left vertex, symbols travel along the expander's edges, and the
/// result is read off folded at the right vertices.
class AELCode {
 public:
  AELCode(const BipartiteGraph& g, LinearCode inner,
          std::shared_ptr<const OuterCode> outer);

  const BipartiteGraph& graph() const { return *g_; }
  const LinearCode& inner() const { return inner_; }
  const OuterCode& outer() const { return *outer_; }
  const Field& field() const { return inner_.field(); }
  int n() const { return g_->n; }
  int d() const { return g_->d; }
  long long length() const { return static_cast<long long>(g_->n) * g_->d; }
  double delta_in() const { return delta_in_; }
  double delta_out() const { return outer_->distance(); }
  double delta_dec() const { return outer_->decoding_radius(); }
  double lambda() const { return lambda_; }

 private:
  const BipartiteGraph* g_;
  LinearCode inner_;
  std::shared_ptr<const OuterCode> outer_;
  double delta_in_, lambda_;
};

/// Right-folded word: folded[r*d + j] is the symbol on edge_at_right(r, j).
using FoldedWord = Word;

Word unfold(const AELCode& a, const FoldedWord& f);
FoldedWord fold(const AELCode& a, const Word& edge_word);

/// Fraction of right blocks (d consecutive symbols) where x and y differ.
double delta_r(const FoldedWord& x, const FoldedWord& y, int n, int d);

FoldedWord ael_encode(const AELCode& a, const OuterWord& w);
bool ael_membership(const AELCode& a, const FoldedWord& f);

/// sqrt-free amplification bound delta_in - lambda / delta_out, clamped.
double ael_distance_bound(double delta_in, double delta_out, double lambda);

/// Per-left-vertex decoding lists of the inner code at the given radius,
/// padded to exactly K entries.
std::vector<std::vector<Word>> local_lists_left(const AELCode& a,
                                                const FoldedWord& g,
                                                double radius, int K);

/// Edges where the i-th local candidate agrees with the received word.
Subgraph agreement_graph_ael(const AELCode& a, const FoldedWord& g,
                             const std::vector<std::vector<Word>>& lists,
                             int i);

struct AelParams {
  /// inner list bound; -1 computes the exhaustive maximum (small q^d only)
  int K = -1;
  /// > 0 replaces the theorem's gamma
  double gamma_override = -1.0;
  /// > 0 replaces the regular-family eta
  double eta_override = -1.0;
  double net_cap = 1e8;
};

struct AelReport {
  std::vector<FoldedWord> list;
  double gamma = 0.0, eta = 0.0;
  int K = 0;
  /// all lambda preconditions of the relevant theorem hold
  bool lambda_ok = false;
  long long net_points = 0;
  long long outer_calls = 0;
};

/// List decoding within right-block radius beta: local inner lists at
/// beta + eps, one agreement graph per list index, a shared regular family,
/// and a net over left signature tuples; each rounded tuple fills an outer
/// word (zero inner codeword off the chosen sets) that the outer decoder
/// finishes. Soundness is unconditional; completeness needs lambda <= gamma.
AelReport list_decode_ael(const AELCode& a, const FoldedWord& g, double beta,
                          double eps, const CutOracle& oracle,
                          const AelParams& params = {});

/// Per right vertex, up to k distinct candidate blocks of length d.
using RecoveryInput = std::vector<std::vector<Word>>;

/// List recovery: every codeword whose right block misses its candidate set
/// on at most a beta fraction of right vertices. Left lists come from list
/// recovery of the inner code against the edge-projected candidate sets;
/// K*k agreement graphs feed the same net pipeline as list decoding.
AelReport list_recover_ael(const AELCode& a, const RecoveryInput& input, int k,
                           double beta, double eps, const CutOracle& oracle,
                           const AelParams& params = {});

struct ThresholdRow {
  std::string name;
  double threshold = 0.0;
  bool pass = false;
};

struct ParameterReport {
  std::string mode;
  double gamma = 0.0;
  double eta = 0.0;
  /// cap on the family a full decomposition round can produce
  double family_bound = 0.0;
  /// log10 of the net-size bound (1/eta + 1)^(K * family_bound)
  double log10_net_bound = 0.0;
  std::vector<ThresholdRow> thresholds;
};

/// Pure arithmetic on the theorem parameters: gamma by mode (ael-decode:
/// eps*delta_dec/(4K); ael-recover: eps*delta_dec/(5kK); tanner-decode:
/// eps^2/(14*K*k)), eta = gamma^2/16, the net-size bound, and the lambda
/// thresholds with pass/fail against the measured value.
ParameterReport parameter_check(double eps, double delta_dec, int K, int k,
                                double lambda, const std::string& mode);

}  // namespace expcodes
