#pragma once

#include <optional>
#include <vector>

#include "expcodes/linear_code.hpp"
#include "expcodes/net.hpp"
#include "expcodes/spectral.hpp"

namespace expcodes {

/// Edge-labeled code on a biregular bipartite graph: a word (one symbol per
/// edge) belongs iff its restriction to every left vertex lies in the left
/// base code and its restriction to every right vertex lies in the right
/// base code.
class TannerCode {
 public:
  TannerCode(const BipartiteGraph& g, LinearCode c1, LinearCode c2);

  const BipartiteGraph& graph() const { return *g_; }
  const LinearCode& left_code() const { return c1_; }
  const LinearCode& right_code() const { return c2_; }
  const Field& field() const { return c1_.field(); }
  int n() const { return g_->n; }
  int d() const { return g_->d; }
  long long length() const { return static_cast<long long>(g_->n) * g_->d; }
  double delta1() const { return delta1_; }
  double delta2() const { return delta2_; }
  double lambda() const { return lambda_; }
  /// Local decoding radii: one symbol under the base distance.
  double delta1_dec() const { return delta1_ - 1.0 / d(); }
  double delta2_dec() const { return delta2_ - 1.0 / d(); }

 private:
  const BipartiteGraph* g_;
  LinearCode c1_, c2_;
  double delta1_, delta2_, lambda_;
};

/// h restricted to the edges at l, in left slot order.
Word left_restriction(const TannerCode& t, const Word& h, int l);
/// h restricted to the edges at r, in right slot order.
Word right_restriction(const TannerCode& t, const Word& h, int r);

bool tanner_membership(const TannerCode& t, const Word& h);

/// Stacks every per-vertex parity constraint into one system over the edge
/// coordinates and returns the resulting code; nullopt when its dimension
/// is zero. Dense computation, capped at nd <= 4096.
std::optional<LinearCode> tanner_basis(const TannerCode& t);

/// Per-left-vertex decoded word (length d); an empty entry marks an erased
/// vertex.
using LeftAssignment = std::vector<Word>;

/// Fraction of erased left vertices.
double erasure_fraction(const LeftAssignment& g);

/// Fraction of left vertices that are present and disagree with h's left
/// restriction.
double left_disagreement(const TannerCode& t, const LeftAssignment& g,
                         const Word& h);

struct EeDecodeResult {
  std::optional<Word> codeword;
  /// measured lambda <= (eps/8) min(delta1, delta2), the guarantee regime
  bool lambda_ok = false;
  int rounds = 0;
};

/// Alternating errors-and-erasures decoding of a left assignment: right
/// vertices take their nearest base codewords (erasure-aware, which fills
/// every hole), then left vertices, until fixpoint or the round cap. The
/// result is returned only if it lands in the code with
/// 2 delta_L(g, h) + s <= delta2 - 4 eps.
EeDecodeResult unique_decode_errors_erasures(const TannerCode& t,
                                             const LeftAssignment& g,
                                             double eps);

/// Subgraph of edges on which the i-th left candidate agrees with the j-th
/// right candidate. Lists are per-vertex, padded.
Subgraph agreement_graph_tanner(const TannerCode& t,
                                const std::vector<std::vector<Word>>& left_lists,
                                const std::vector<std::vector<Word>>& right_lists,
                                int i, int j);

struct TannerDecodeParams {
  /// local list bounds; -1 computes the exhaustive maximum (small q^d only)
  int k1 = -1;
  int k2 = -1;
  /// > 0 replaces gamma = eps^2 / (14 K1 K2)
  double gamma_override = -1.0;
  /// > 0 replaces the regular-family eta
  double eta_override = -1.0;
  double net_cap = 1e8;
};

struct TannerDecodeReport {
  std::vector<Word> list;
  double gamma = 0.0, eta = 0.0;
  int k1 = 0, k2 = 0;
  /// all lambda preconditions of the completeness theorem hold
  bool lambda_ok = false;
  long long net_points = 0;
  long long ee_calls = 0;
};

/// List decoding via regularity: local lists on both sides, one agreement
/// graph per candidate pair, a shared regular family, and a net over left
/// signature tuples; each net point is rounded to disjoint sets, completed
/// with erasures, and handed to the errors-and-erasures decoder. Output
/// words lie within min(delta1 * delta2_dec, delta1_dec * delta2) - eps of
/// g; soundness is unconditional, completeness holds in the lambda regime
/// flagged by the report.
TannerDecodeReport list_decode_tanner(const TannerCode& t, const Word& g,
                                      double eps, const CutOracle& oracle,
                                      const TannerDecodeParams& params = {});

/// sqrt(d1 d2) (sqrt(d1 d2) - lambda), clamped at zero.
double tanner_distance_bound(double delta1, double delta2, double lambda);

/// rho1 + rho2 - 1, the rate floor from parity counting.
double tanner_rate_bound(double rho1, double rho2);

/// Exhaustive maximum list size of `code` at the given fractional radius
/// over every possible received word. Exponential in the block length.
int max_list_size(const LinearCode& code, double radius);

/// Exhaustive maximum output-list size for list recovery with per-position
/// candidate sets of size `k`, over every choice of sets. Only feasible for
/// tiny alphabets and lengths.
int max_list_recovery_size(const LinearCode& code, int k, double radius);

}  // namespace expcodes
