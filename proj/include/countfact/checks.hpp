#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "countfact/bounds.hpp"
#include "countfact/factorizations.hpp"
#include "countfact/mechanism.hpp"
#include "countfact/sweep.hpp"

namespace countfact {

// Runtime invariant checks behind the CLI --check flag. Each returns a list of
// human-readable violations; an empty list means everything held.

std::vector<std::string> check_coefficients(const CoefficientTable& table);

/// Norm consistency, meanse <= maxse, nuclear bound sandwich, and the
/// reconstruction residual when n is within the dense budget.
std::vector<std::string> check_factorization(const Factorization& f);

std::vector<std::string> check_bounds(const BoundReport& b);

std::vector<std::string> check_simulation(const MechanismConfig& cfg, const SimulationResult& r);

/// Orderings across methods at each n: meanse <= maxse, nuclear_lb <= maxse,
/// nsr maxse <= sqrt maxse for n >= 4, and residual = value - log(n)/pi.
std::vector<std::string> check_sweep(const std::vector<SweepRow>& rows);

}  // namespace countfact
