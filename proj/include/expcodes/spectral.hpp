#pragma once

#include <cstdint>

#include "expcodes/graph.hpp"

namespace expcodes {

/// Top two singular values of the biadjacency matrix. For a d-regular
/// bipartite graph sigma1 = d exactly (uniform pair), so the expansion
/// quality is lambda = sigma2 / d in [0, 1].
struct SpectralProfile {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double lambda = 0.0;
};

/// Power iteration on A^T A after deflating the uniform top pair.
/// Deterministic start vector; stops at relative tolerance tol or after
/// 10 * n * d iterations.
SpectralProfile measure_lambda(const BipartiteGraph& g, double tol = 1e-9);

struct MixingReport {
  int trials = 0;
  /// max over trials of (deviation - lambda*d*sqrt(|S||T|)) / (n*d);
  /// anything above 1e-9 indicates a build bug, not statistics.
  double max_violation = 0.0;
  int violations = 0;
};

/// Samples random set pairs and checks the expander mixing inequality
/// |E(S,T) - (d/n)|S||T|| <= lambda * d * sqrt(|S||T|) on each.
MixingReport mixing_audit(const BipartiteGraph& g, double lambda, int trials,
                          std::uint64_t seed);

}  // namespace expcodes
