#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expcodes/factor.hpp"

namespace expcodes {

/// A realizable grid point: K signatures over the family, plus measurable
/// functions witnessing realizability.
struct NetPoint {
  std::vector<std::vector<double>> sigma;  // K x |F|
  std::vector<AtomFn> fbar;                // K witnesses, one value per atom
};

/// Lexicographic sweep over the signature grid D_eta^{K x |F|} with
/// D_eta = {0, eta, 2*eta, ...} capped at 1, yielding only points that
/// realize_signature accepts. Tuples whose 1_L coordinates already sum
/// beyond 1 + K * eta are pruned before the LP. At most
/// (1/eta + 1)^(K * |F|) grid points exist; construction refuses grids
/// beyond the cap.
class NetEnumerator {
 public:
  NetEnumerator(const FunctionFamily& fam, const Factor& b, int K, double eta,
                double cap = 1e8);

  /// Next realizable point, or nullopt when the grid is exhausted.
  std::optional<NetPoint> next();

  long long scanned() const { return scanned_; }
  long long emitted() const { return emitted_; }
  double grid_total() const { return grid_total_; }

 private:
  const FunctionFamily& fam_;
  const Factor& b_;
  int K_;
  double eta_;
  std::vector<double> grid_;
  std::vector<int> idx_;  // odometer, last coordinate fastest
  bool done_ = false;
  bool started_ = false;
  long long scanned_ = 0, emitted_ = 0;
  double grid_total_ = 0.0;

  bool advance();
};

}  // namespace expcodes
