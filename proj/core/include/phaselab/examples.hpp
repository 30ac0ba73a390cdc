#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaselab/frames.hpp"
#include "phaselab/subspaces.hpp"

namespace phaselab {

struct ExpectedProperty {
    std::string name;
    bool expected = true;
};

struct PropertyOutcome {
    std::string name;
    bool expected = false;
    bool actual = false;
    bool ok() const { return expected == actual; }
};

// A constructed object from the literature together with the machine-checkable
// properties it is expected to satisfy.
template <class S>
struct ExampleBundle {
    std::string name;
    std::optional<Frame<S>> frame;
    std::optional<Arrangement<S>> arrangement;
    std::vector<ExpectedProperty> expected;
    std::vector<Rational> xs_used;  // rd-family only: the generator points kept
};

// Five vectors in R^3 (one coordinate involves sqrt(2)): full spark, does
// phase retrieval, induced hyperplanes fail it at x = (1,1,1).
ExampleBundle<double> gen_r3_quintet();

// 2d-1 rational vectors in R^d built from the last-coordinate identity
// a_d * sum a_i = sum a_i^2: full spark, does phase retrieval, perps are
// exactly deficient at x = (1,...,1). Default xs are 2..d, replaced
// automatically when a choice breaks full spark.
ExampleBundle<Rational> gen_rd_family(std::size_t d, std::vector<Rational> xs = {});

// Five 2-dimensional subspaces of R^3 that do phase retrieval while their
// perp vectors fail the complement property.
ExampleBundle<Rational> gen_r3_hyperplane_quintet();

// Six hyperplanes of R^4 with integer normals (normalizers dropped;
// projectors are scale-invariant).
ExampleBundle<Rational> gen_r4_six_hyperplanes();

// Runs every named predicate in the bundle's expectation list.
std::vector<PropertyOutcome> evaluate_bundle(const ExampleBundle<double>& b);
std::vector<PropertyOutcome> evaluate_bundle(const ExampleBundle<Rational>& b);

}  // namespace phaselab
