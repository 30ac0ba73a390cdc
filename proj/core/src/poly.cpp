#include "phaselab/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace phaselab {

Rational IntPoly::eval(const Rational& t) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + Rational(c_[i]);
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = BigInt(static_cast<long>(i)) * c_[i];
    return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
    BigInt g(0);
    for (const BigInt& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return IntPoly();
    BigInt g = content();
    std::vector<BigInt> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / g;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::negated() const {
    std::vector<BigInt> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + b.negated(); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
}

IntPoly operator*(const BigInt& c, const IntPoly& a) {
    std::vector<BigInt> r(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = c * a.c_[i];
    return IntPoly(std::move(r));
}

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem: division by zero polynomial");
    if (a.degree() < b.degree()) return a;
    const BigInt lc = b.leading();
    long e = a.degree() - b.degree() + 1;
    IntPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        // r <- lc(b) * r - lc(r) * x^(deg r - deg b) * b
        long shift = r.degree() - b.degree();
        std::vector<BigInt> c(static_cast<std::size_t>(r.degree()) + 1, BigInt(0));
        const BigInt rl = r.leading();
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = lc * r[i];
        for (std::size_t i = 0; i < b.coeffs().size(); ++i)
            c[i + static_cast<std::size_t>(shift)] -= rl * b[i];
        r = IntPoly(std::move(c));
        --e;
    }
    // Pad to the full multiplier lc^e, then correct to a positive multiplier.
    BigInt pad;
    mpz_pow_ui(pad.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(std::max(e, 0L)));
    r = pad * r;
    // Total multiplier is lc^(deg a - deg b + 1); flip if that is negative.
    if (sgn(lc) < 0 && (a.degree() - b.degree() + 1) % 2 != 0) r = r.negated();
    return r;
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_div: division by zero polynomial");
    if (a.is_zero()) return IntPoly();
    if (a.degree() < b.degree()) throw std::invalid_argument("exact_div: not divisible");
    std::vector<BigInt> rem = a.coeffs();
    std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, BigInt(0));
    const BigInt& lc = b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt top = rem[k + b.coeffs().size() - 1];
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        if (sgn(r) != 0) throw std::invalid_argument("exact_div: not divisible");
        quot[k] = q;
        for (std::size_t i = 0; i < b.coeffs().size(); ++i) rem[k + i] -= q * b[i];
    }
    for (const BigInt& x : rem)
        if (sgn(x) != 0) throw std::invalid_argument("exact_div: nonzero remainder");
    return IntPoly(std::move(quot));
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
    a = a.is_zero() ? a : a.primitive();
    b = b.is_zero() ? b : b.primitive();
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? IntPoly() : r.primitive();
    }
    if (!a.is_zero() && sgn(a.leading()) < 0) a = a.negated();
    return a;
}

SturmChain sturm_chain(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_chain: zero polynomial");
    SturmChain chain;
    chain.seq.push_back(p.primitive());
    IntPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.seq.push_back(d.primitive());
    for (;;) {
        const IntPoly& prev = chain.seq[chain.seq.size() - 2];
        const IntPoly& cur = chain.seq.back();
        IntPoly r = pseudo_rem(prev, cur);
        if (r.is_zero()) break;
        chain.seq.push_back(r.negated().primitive());
    }
    return chain;
}

namespace {

int sign_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int count_real_roots(const IntPoly& p, const RootInterval& interval) {
    if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    if (p.degree() == 0) return 0;
    if (!interval.whole_line) {
        if (!(interval.a < interval.b))
            throw std::invalid_argument("count_real_roots: requires a < b");
        if (p.sign_at(interval.a) == 0)
            throw std::invalid_argument("count_real_roots: p vanishes at the lower bound a");
        if (p.sign_at(interval.b) == 0)
            throw std::invalid_argument("count_real_roots: p vanishes at the upper bound b");
    }

    // Sturm needs a squarefree polynomial; counts are of distinct roots.
    IntPoly g = poly_gcd(p, p.derivative());
    IntPoly sf = g.degree() > 0 ? exact_div(p.primitive(), g) : p.primitive();

    SturmChain chain = sturm_chain(sf);
    std::vector<int> lo, hi;
    lo.reserve(chain.seq.size());
    hi.reserve(chain.seq.size());
    for (const IntPoly& q : chain.seq) {
        if (interval.whole_line) {
            lo.push_back(q.sign_at_neg_inf());
            hi.push_back(q.sign_at_pos_inf());
        } else {
            lo.push_back(q.sign_at(interval.a));
            hi.push_back(q.sign_at(interval.b));
        }
    }
    return sign_variations(lo) - sign_variations(hi);
}

BivariatePoly::BivariatePoly(std::vector<BiTerm> terms) {
    std::map<std::pair<int, int>, BigInt> acc;
    for (auto& t : terms) {
        if (t.e34 < 0 || t.e44 < 0)
            throw std::invalid_argument("BivariatePoly: negative exponent");
        acc[{t.e34, t.e44}] += t.coef;
    }
    for (auto& [key, coef] : acc)
        if (sgn(coef) != 0) terms_.push_back({key.first, key.second, coef});
}

IntPoly specialize_x34(const BivariatePoly& f) {
    int dmax = -1;
    for (const auto& t : f.terms()) dmax = std::max(dmax, t.e44);
    if (dmax < 0) return IntPoly();
    std::vector<BigInt> c(static_cast<std::size_t>(dmax) + 1, BigInt(0));
    for (const auto& t : f.terms()) c[static_cast<std::size_t>(t.e44)] += t.coef;
    return IntPoly(std::move(c));
}

IntPoly specialize_x44(const BivariatePoly& f) {
    int dmax = -1;
    for (const auto& t : f.terms()) dmax = std::max(dmax, t.e34);
    if (dmax < 0) return IntPoly();
    std::vector<BigInt> c(static_cast<std::size_t>(dmax) + 1, BigInt(0));
    for (const auto& t : f.terms()) c[static_cast<std::size_t>(t.e34)] += t.coef;
    return IntPoly(std::move(c));
}

bool is_homogeneous(const BivariatePoly& f, int deg) {
    for (const auto& t : f.terms())
        if (t.e34 + t.e44 != deg) return false;
    return true;
}

}  // namespace phaselab
