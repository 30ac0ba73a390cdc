#pragma once

#include <optional>
#include <vector>

#include "phaselab/linalg.hpp"
#include "phaselab/scalar.hpp"

namespace phaselab {

// Decides existence of x >= 0 with A x = b over exact rationals.
// Phase-1 simplex with Bland's anti-cycling rule; infeasibility is certified
// by a strictly positive phase-1 optimum (no tolerances involved).
std::optional<std::vector<Rational>> feasible_nonneg(const Mat<Rational>& a,
                                                     const Vec<Rational>& b);

}  // namespace phaselab
