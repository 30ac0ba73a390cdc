#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace phaselab {

// Exact backend scalar: arbitrary-precision rational, always canonical.
using Rational = mpq_class;
using BigInt = mpz_class;

// Default tolerance for the float backend.
inline constexpr double kDefaultEps = 1e-9;

inline Rational make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p" (arbitrary precision, base 10).
inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
    if (sgn(r.get_den()) == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rational_str(const Rational& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

template <class S>
struct backend_traits;

template <>
struct backend_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static bool is_zero(const Rational& x, double /*eps*/) { return sgn(x) == 0; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Rational abs_val(const Rational& x) { return abs(x); }
};

template <>
struct backend_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static bool is_zero(double x, double eps) { return std::fabs(x) <= eps; }
    static double to_double(double x) { return x; }
    static double abs_val(double x) { return std::fabs(x); }
};

// Thrown when a combinatorial guard (subset enumeration, sign enumeration)
// would be exceeded without an explicit override.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace phaselab
