#pragma once

// Evaluation domains. Every closed form in the library is a product of powers of
// 2 and pi, Pochhammer symbols and (reciprocal) Gamma factors whose arguments are
// affine in the parameters. Arguments are therefore carried as Lin = v + d*s,
// where s is the probe variable (d = 0 for plain evaluation), and each domain
// decides how the factors are represented:
//   ExactDomain       StructuredScalar, real rational arguments only
//   NumericDomain     BigC
//   ExactJetDomain    Jet2<ExactSum>
//   NumericJetDomain  Jet2<BigC>
//   GermDomain        Germ: order of vanishing at s = 0 and leading coefficient

#include "trilinear/jet.hpp"

#include <map>
#include <utility>

namespace trilinear {

struct Lin {
    CRational v;
    CRational d;

    Lin() = default;
    Lin(CRational value, CRational slope = CRational()) : v(std::move(value)), d(std::move(slope)) {}
    Lin(const Rational& value) : v(value) {}
    Lin(long value) : v(value) {}
    Lin(int value) : v(value) {}

    friend Lin operator+(const Lin& a, const Lin& b) { return {a.v + b.v, a.d + b.d}; }
    friend Lin operator-(const Lin& a, const Lin& b) { return {a.v - b.v, a.d - b.d}; }
    friend Lin operator-(const Lin& a) { return {-a.v, -a.d}; }
    friend Lin operator*(const Lin& a, const Rational& k) { return {a.v * CRational(k), a.d * CRational(k)}; }
    friend Lin operator*(const Rational& k, const Lin& a) { return a * k; }
    friend Lin operator/(const Lin& a, long k) { return a * make_rational(1, k); }
    bool constant() const { return d.is_zero(); }
};

namespace detail {
inline ReducedArgument reduce_complex(const CRational& v, CRational& base) {
    ReducedArgument r = reduce_argument(v.re);
    base = CRational(r.base, v.im);
    return r;
}

// rgamma at a complex point whose real part lies in (0,1], memoized per thread.
inline const BigC& rgamma_base_cached(const CRational& base, long prec) {
    thread_local std::map<std::pair<CRational, long>, BigC> cache;
    if (cache.size() > 8192) cache.clear();
    auto key = std::make_pair(base, prec);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, rgamma(BigC(base, prec))).first;
    return it->second;
}

inline BigC pow2_complex(const CRational& v, long prec) {
    if (is_integer(v)) return BigC(detail::pow2_rational(to_long(v.re)), prec);
    return exp(BigC(v, prec) * BigC(const_log2(prec)));
}
}  // namespace detail

struct ExactDomain {
    using Value = StructuredScalar;

    static const Rational& real(const Lin& x) {
        if (!x.constant() || !x.v.is_real()) throw NotExact("exact evaluation needs real rational arguments");
        return x.v.re;
    }
    Value one() const { return StructuredScalar(1); }
    Value rational(const Rational& q) const { return StructuredScalar(q); }
    Value poch(const Lin& x, long n) const { return StructuredScalar(pochhammer(real(x), n)); }
    Value rgamma(const Lin& x) const { return rgamma_exact(real(x)); }
    Value gamma(const Lin& x) const { return gamma_exact(real(x)); }
    Value pow2(const Lin& x) const { return StructuredScalar::pow2(real(x)); }
    Value pi_half(long h) const { return StructuredScalar::pi_half(h); }
};

struct NumericDomain {
    using Value = BigC;
    long prec = default_precision();

    static const CRational& value(const Lin& x) {
        if (!x.constant()) throw std::logic_error("numeric point evaluation with a nonzero slope");
        return x.v;
    }
    Value one() const { return BigC(Rational(1), prec); }
    Value rational(const Rational& q) const { return BigC(q, prec); }
    Value poch(const Lin& x, long n) const { return BigC(pochhammer(value(x), n), prec); }
    Value rgamma(const Lin& x) const {
        const CRational& v = value(x);
        if (is_nonpositive_integer(v)) return BigC(prec);
        CRational base;
        ReducedArgument r = detail::reduce_complex(v, base);
        const BigC& g = detail::rgamma_base_cached(base, prec);
        if (r.shift >= 0) return g / BigC(pochhammer(base, r.shift), prec);
        return g * BigC(pochhammer(v, -r.shift), prec);
    }
    Value gamma(const Lin& x) const {
        if (is_nonpositive_integer(value(x))) throw PoleError("Gamma pole at " + to_string(value(x)));
        return one() / rgamma(x);
    }
    Value pow2(const Lin& x) const { return detail::pow2_complex(value(x), prec); }
    Value pi_half(long h) const { return BigC(detail::pi_half_power(h, prec)); }
};

struct ExactJetDomain {
    using Value = Jet2<ExactSum>;

    static void require_real(const Lin& x) {
        if (!x.v.is_real() || !x.d.is_real()) throw NotExact("exact jets need real rational arguments and directions");
    }
    static Value lift(const ExactSum& c) { return {c, ExactSum(), ExactSum()}; }
    static Value lift(const Jet2<Rational>& j) { return {ExactSum(j.c0), ExactSum(j.c1), ExactSum(j.c2)}; }
    static Jet2<Rational> rational_jet(const Lin& x) { return {x.v.re, x.d.re, Rational(0)}; }

    Value one() const { return lift(ExactSum(1)); }
    Value rational(const Rational& q) const { return lift(ExactSum(q)); }
    Value poch(const Lin& x, long n) const {
        require_real(x);
        return lift(pochhammer(rational_jet(x), n, Rational(1)));
    }
    Value rgamma(const Lin& x) const {
        require_real(x);
        if (x.constant()) return lift(ExactSum(rgamma_exact(x.v.re)));
        auto [f, shift] = reduce_argument(x.v.re);
        const Rational& d = x.d.re;
        ExactSum psi = digamma_exact_base(f);
        ExactSum psi1 = trigamma_exact_base(f);
        ExactSum lead(rgamma_exact(f));
        Value base{lead, lead * psi * ExactSum(-d), lead * (psi * psi - psi1) * ExactSum(d * d / 2)};
        if (shift >= 0) return base / lift(pochhammer(Jet2<Rational>{f, d, 0}, shift, Rational(1)));
        return lift(pochhammer(rational_jet(x), -shift, Rational(1))) * base;
    }
    Value gamma(const Lin& x) const {
        require_real(x);
        if (x.constant()) return lift(ExactSum(gamma_exact(x.v.re)));
        if (is_nonpositive_integer(x.v.re)) throw PoleError("Gamma pole in jet at " + x.v.re.get_str());
        return one() / rgamma(x);
    }
    Value pow2(const Lin& x) const {
        require_real(x);
        ExactSum lead(StructuredScalar::pow2(x.v.re));
        if (x.constant()) return lift(lead);
        ExactSum l = ExactSum(x.d.re) * ExactSum::atom(AtomKind::Log2);
        return {lead, lead * l, lead * l * l * ExactSum(Rational(1, 2))};
    }
    Value pi_half(long h) const { return lift(ExactSum(StructuredScalar::pi_half(h))); }
};

struct NumericJetDomain {
    using Value = Jet2<BigC>;
    long prec = default_precision();

    Value lift(const BigC& c) const { return {c, BigC(prec), BigC(prec)}; }
    Value lift(const Jet2<CRational>& j) const { return {BigC(j.c0, prec), BigC(j.c1, prec), BigC(j.c2, prec)}; }
    NumericDomain point() const { return NumericDomain{prec}; }

    Value one() const { return lift(BigC(Rational(1), prec)); }
    Value rational(const Rational& q) const { return lift(BigC(q, prec)); }
    Value poch(const Lin& x, long n) const {
        return lift(pochhammer(Jet2<CRational>{x.v, x.d, CRational()}, n, CRational(1)));
    }
    Value rgamma(const Lin& x) const {
        if (x.constant()) return lift(point().rgamma(x));
        CRational base;
        ReducedArgument r = detail::reduce_complex(x.v, base);
        BigC lead = detail::rgamma_base_cached(base, prec);
        BigC psi = digamma(BigC(base, prec));
        BigC psi1 = trigamma(BigC(base, prec));
        BigC d(x.d, prec);
        Value jet{lead, -(lead * psi * d), lead * (psi * psi - psi1) * d * d * BigC(Rational(1, 2), prec)};
        if (r.shift >= 0)
            return jet / lift(pochhammer(Jet2<CRational>{base, x.d, CRational()}, r.shift, CRational(1)));
        return lift(pochhammer(Jet2<CRational>{x.v, x.d, CRational()}, -r.shift, CRational(1))) * jet;
    }
    Value gamma(const Lin& x) const {
        if (is_nonpositive_integer(x.v)) throw PoleError("Gamma pole in jet at " + to_string(x.v));
        return one() / rgamma(x);
    }
    Value pow2(const Lin& x) const {
        BigC lead = detail::pow2_complex(x.v, prec);
        if (x.constant()) return lift(lead);
        BigC l = BigC(x.d, prec) * BigC(const_log2(prec));
        return {lead, lead * l, lead * l * l * BigC(Rational(1, 2), prec)};
    }
    Value pi_half(long h) const { return lift(BigC(detail::pi_half_power(h, prec))); }
};

// Leading term lead * s^order of a germ at s = 0; `zero` marks the zero germ.
struct Germ {
    long order = 0;
    StructuredScalar lead{1};
    bool zero = false;

    friend Germ operator*(const Germ& a, const Germ& b) {
        if (a.zero || b.zero) return {0, StructuredScalar(), true};
        return {a.order + b.order, a.lead * b.lead, false};
    }
    Germ& operator*=(const Germ& b) { return *this = *this * b; }
    // Coefficient of s^k.
    StructuredScalar coefficient(long k) const {
        if (zero || k < order) return StructuredScalar();
        if (k == order) return lead;
        throw NotExact("germ carries only its leading coefficient");
    }
};

struct GermDomain {
    using Value = Germ;

    static void require_real(const Lin& x) {
        if (!x.v.is_real() || !x.d.is_real()) throw NotExact("germs need real rational arguments");
    }
    Value one() const { return {}; }
    Value rational(const Rational& q) const {
        if (sgn(q) == 0) return {0, StructuredScalar(), true};
        return {0, StructuredScalar(q), false};
    }
    Value poch(const Lin& x, long n) const {
        require_real(x);
        Germ g;
        Rational lead = 1;
        for (long i = 0; i < n; ++i) {
            Rational v = x.v.re + i;
            if (sgn(v) != 0) {
                lead *= v;
            } else if (x.d.is_zero()) {
                return {0, StructuredScalar(), true};
            } else {
                ++g.order;
                lead *= x.d.re;
            }
        }
        g.lead = StructuredScalar(lead);
        return g;
    }
    // Near -m: 1/Gamma(-m + d s) = (-1)^m m! d s + O(s^2).
    Value rgamma(const Lin& x) const {
        require_real(x);
        if (!is_nonpositive_integer(x.v.re)) return {0, rgamma_exact(x.v.re), false};
        if (x.d.is_zero()) return {0, StructuredScalar(), true};
        long m = to_long(-x.v.re);
        Rational c = (m % 2 == 0 ? 1 : -1) * Rational(factorial(m)) * x.d.re;
        return {1, StructuredScalar(c), false};
    }
    Value gamma(const Lin& x) const {
        require_real(x);
        if (!is_nonpositive_integer(x.v.re)) return {0, gamma_exact(x.v.re), false};
        if (x.d.is_zero()) throw PoleError("Gamma pole at " + x.v.re.get_str());
        long m = to_long(-x.v.re);
        Rational c = (m % 2 == 0 ? 1 : -1) * Rational(factorial(m)) * x.d.re;
        return {-1, StructuredScalar(1 / c), false};
    }
    Value pow2(const Lin& x) const {
        require_real(x);
        return {0, StructuredScalar::pow2(x.v.re), false};
    }
    Value pi_half(long h) const { return {0, StructuredScalar::pi_half(h), false}; }
};

}  // namespace trilinear
