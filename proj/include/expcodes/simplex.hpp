#pragma once

#include <optional>
#include <vector>

namespace expcodes {

/// Phase-1 simplex feasibility check for {x >= 0 : A x <= b} (b may be
/// negative). Returns a feasible point, or nullopt if the system is
/// infeasible at the given tolerance. Bland's rule, dense tableau; meant
/// for the small systems produced by signature realization.
std::optional<std::vector<double>> lp_feasible_point(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b,
    double tol = 1e-9);

}  // namespace expcodes
