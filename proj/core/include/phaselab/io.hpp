#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "phaselab/frames.hpp"
#include "phaselab/poly.hpp"
#include "phaselab/subspaces.hpp"

#include <json.hpp>

namespace phaselab {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using FrameVar = std::variant<Frame<Rational>, Frame<double>>;
using ArrangementVar = std::variant<Arrangement<Rational>, Arrangement<double>>;

// Frame file: {"dim": d, "scalars": "rational"|"float",
//              "vectors": [["p/q", ...], ...]}.
// Rational entries are strings "p/q" or "p" (integral JSON numbers accepted);
// float entries are JSON numbers.
FrameVar parse_frame_json(const nlohmann::json& j);
nlohmann::ordered_json frame_to_json(const Frame<Rational>& f);
nlohmann::ordered_json frame_to_json(const Frame<double>& f);

// Arrangement file: {"dim": d, "scalars": ...,
//                    "subspaces": [{"normal": [...]} | {"basis": [[...], ...]}]}.
ArrangementVar parse_arrangement_json(const nlohmann::json& j);
nlohmann::ordered_json arrangement_to_json(const Arrangement<Rational>& a);
nlohmann::ordered_json arrangement_to_json(const Arrangement<double>& a);

// Polynomial text format: one term per line, "e34 e44 coefficient".
BivariatePoly parse_poly_text(std::istream& in);
std::string poly_to_text(const BivariatePoly& f);

}  // namespace phaselab
