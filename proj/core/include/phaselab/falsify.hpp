#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phaselab/subspaces.hpp"

namespace phaselab {

// Candidates below this smallest-singular-value threshold are handed to the
// rounding/verification step.
inline constexpr double kFalsifyTau = 1e-8;

struct FalsifyReport {
    std::uint64_t seed = 0;
    int restarts = 0;
    double min_sigma = 0;             // best sigma_min(M(x)) over unit x found
    std::vector<double> best_x;       // unit vector achieving min_sigma
    bool witness_found = false;       // verified deficient witness exists below
    bool exact_verified = false;      // witness re-verified on the exact backend
    std::optional<std::vector<Rational>> witness_x;  // rounded witness (exact case)
    std::optional<std::size_t> witness_rank;
};

// Multi-start minimization of the smallest singular value of the stacked
// matrix with rows (P_i x)^T over unit x. A large minimum is evidence (not
// proof) that the arrangement does phase retrieval; a verified deficient
// witness is a proof that it does not. Deterministic for a fixed seed;
// restarts run in parallel (capped by PHASELAB_THREADS) with a deterministic
// reduction.
FalsifyReport edidin_numeric_falsify(const Arrangement<Rational>& arr, int restarts,
                                     std::uint64_t seed);
FalsifyReport edidin_numeric_falsify(const Arrangement<double>& arr, int restarts,
                                     std::uint64_t seed);

// Nearest rational with denominator <= max_den (continued fractions).
Rational round_to_rational(double x, long max_den);

}  // namespace phaselab
