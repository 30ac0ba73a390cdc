#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaselab/scalar.hpp"

namespace phaselab {

// Dense univariate polynomial over arbitrary-precision integers,
// constant term first, trailing zeros trimmed (zero polynomial is empty).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly from_longs(std::vector<long> coeffs) {
        std::vector<BigInt> c(coeffs.begin(), coeffs.end());
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& leading() const { return c_.back(); }
    const BigInt& operator[](std::size_t i) const { return c_[i]; }

    Rational eval(const Rational& t) const;  // exact Horner
    int sign_at(const Rational& t) const { return sgn(eval(t)); }
    int sign_at_pos_inf() const { return is_zero() ? 0 : sgn(leading()); }
    int sign_at_neg_inf() const {
        if (is_zero()) return 0;
        return degree() % 2 == 0 ? sgn(leading()) : -sgn(leading());
    }

    IntPoly derivative() const;
    BigInt content() const;       // gcd of coefficients (>= 0)
    IntPoly primitive() const;    // divided by positive content
    IntPoly negated() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const BigInt& c, const IntPoly& a);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

// Pseudo-remainder of (a, b) scaled by a positive multiplier |lc(b)|^k,
// so its sign agrees with the true remainder.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);

// Exact division; throws if b does not divide a over the integers.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient.
IntPoly poly_gcd(IntPoly a, IntPoly b);

// Sturm chain p_0 = p, p_1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each scaled by
// a positive integer (pseudo-remainders with content removal).
struct SturmChain {
    std::vector<IntPoly> seq;
};

SturmChain sturm_chain(const IntPoly& p);

struct RootInterval {
    bool whole_line = true;
    Rational a, b;  // used when !whole_line; requires a < b
};

// Number of distinct real roots via Sturm sign variations. Non-squarefree
// inputs are first divided by gcd(p, p'). Throws if p vanishes at a bound.
int count_real_roots(const IntPoly& p, const RootInterval& interval = {});

// Sparse bivariate polynomial in (x34, x44); no duplicate exponent pairs,
// no zero coefficients.
struct BiTerm {
    int e34 = 0;
    int e44 = 0;
    BigInt coef;
};

class BivariatePoly {
public:
    BivariatePoly() = default;
    explicit BivariatePoly(std::vector<BiTerm> terms);

    const std::vector<BiTerm>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

private:
    std::vector<BiTerm> terms_;
};

// Substitutes x34 = 1; coefficient of t^k collects terms with e44 = k.
IntPoly specialize_x34(const BivariatePoly& f);
// Substitutes x44 = 1 (the reversed specialization for homogeneous input).
IntPoly specialize_x44(const BivariatePoly& f);

bool is_homogeneous(const BivariatePoly& f, int deg);

// The degree-10 certificate polynomial shipped with the library
// (eleven terms, embedded as decimal strings).
const BivariatePoly& f0_dataset();

}  // namespace phaselab
