#include "expcodes/net.hpp"

#include <cmath>
#include <stdexcept>

namespace expcodes {

NetEnumerator::NetEnumerator(const FunctionFamily& fam, const Factor& b, int K,
                             double eta, double cap)
    : fam_(fam), b_(b), K_(K), eta_(eta) {
  if (K < 1) throw std::invalid_argument("NetEnumerator: K must be positive");
  if (!(eta > 0.0) || eta > 1.0)
    throw std::invalid_argument("NetEnumerator: eta must be in (0, 1]");
  int steps = static_cast<int>(std::floor(1.0 / eta + 1e-9));
  for (int t = 0; t <= steps; ++t) grid_.push_back(t * eta);
  int coords = K_ * fam_.size();
  grid_total_ = std::pow(static_cast<double>(grid_.size()), coords);
  if (grid_total_ > cap)
    throw std::length_error("NetEnumerator: grid larger than cap; shrink the instance");
  idx_.assign(coords, 0);
}

bool NetEnumerator::advance() {
  if (!started_) {
    started_ = true;
    return true;
  }
  for (int c = static_cast<int>(idx_.size()) - 1; c >= 0; --c) {
    if (++idx_[c] < static_cast<int>(grid_.size())) return true;
    idx_[c] = 0;
  }
  return false;
}

std::optional<NetPoint> NetEnumerator::next() {
  const int p = fam_.size();
  while (!done_) {
    if (!advance()) {
      done_ = true;
      break;
    }
    ++scanned_;
    std::vector<std::vector<double>> sigma(K_, std::vector<double>(p));
    for (int i = 0; i < K_; ++i)
      for (int j = 0; j < p; ++j) sigma[i][j] = grid_[idx_[i * p + j]];
    // family sets are disjointly occupied, so the 1_L coordinates (j = 0)
    // of a realizable tuple cannot sum above 1 by more than the tolerance
    double total = 0.0;
    for (int i = 0; i < K_; ++i) total += sigma[i][0];
    if (total > 1.0 + K_ * eta_ + 1e-12) continue;
    auto fbar = realize_signature(sigma, fam_, b_, eta_);
    if (!fbar) continue;
    ++emitted_;
    return NetPoint{std::move(sigma), std::move(*fbar)};
  }
  return std::nullopt;
}

}  // namespace expcodes
