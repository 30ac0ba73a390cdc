#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "phaselab/frames.hpp"

namespace phaselab {

inline constexpr std::size_t kReconstructGuard = 24;

// Exact magnitude measurements b_i = |<x, phi_i>| (rational for rational
// inputs; no square roots involved).
struct MeasurementSet {
    std::vector<Rational> magnitudes;
};

MeasurementSet measure(const Frame<Rational>& f, const Vec<Rational>& x);

// Brute-force phaseless reconstruction: enumerates sign patterns (global sign
// quotiented out), solves each linear system exactly, and returns all distinct
// solution classes up to sign. A frame does phase retrieval operationally iff
// generic measurements yield exactly one class.
std::vector<Vec<Rational>> reconstruct_brute(const Frame<Rational>& f,
                                             const MeasurementSet& b);

// Random-signal empirical phase-retrieval test: false at the first ambiguous
// instance, true if every trial reconstructed uniquely.
bool pr_empirical(const Frame<Rational>& f, int trials, std::uint64_t seed);

// Witness-guided ambiguity pair for a frame failing the complement property
// with subset I: x = u + v, y = u - v with u orthogonal to the I side and v
// orthogonal to the complement side. measure(x) == measure(y) and x != +-y.
std::pair<Vec<Rational>, Vec<Rational>> cp_ambiguity_pair(
    const Frame<Rational>& f, const std::vector<std::size_t>& witness);

}  // namespace phaselab
