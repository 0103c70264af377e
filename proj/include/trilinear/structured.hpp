#pragma once

// Exact products of the form q * 2^e * pi^(h/2) * prod Gamma(x)^m.
// Gamma factors are kept only at reduced arguments x in (0,1) \ {1/2};
// every other Gamma value at a rational point is folded into q, e and h
// through the functional equation.

#include "trilinear/bigfloat.hpp"
#include "trilinear/special.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace trilinear {

struct NotExact : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {
inline long two_adic_valuation(const Integer& z) {
    if (sgn(z) == 0) return 0;
    return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
}

inline Rational pow2_rational(long e) {
    Rational r(1);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

inline void merge_powers(std::map<Rational, long>& into, const std::map<Rational, long>& from, long sign) {
    for (const auto& [x, e] : from) {
        long& slot = into[x];
        slot += sign * e;
        if (slot == 0) into.erase(x);
    }
}

inline Real pow2_real(const Rational& e, long prec) {
    if (is_integer(e)) return ldexp(Real(1L, prec), to_long(e));
    return exp(Real(e, prec) * const_log2(prec));
}

inline Real pi_half_power(long h, long prec) {
    Real root = sqrt(const_pi(prec));
    Real r = Real::with_precision(prec);
    mpfr_pow_si(r.raw(), root.raw(), h, MPFR_RNDN);
    return r;
}
}  // namespace detail

class StructuredScalar {
public:
    StructuredScalar() = default;
    StructuredScalar(const Rational& q) : q_(q) { normalize(); }
    StructuredScalar(long v) : q_(v) { normalize(); }
    StructuredScalar(const Rational& q, const Rational& two_exp, long pi_half_exp,
                     std::map<Rational, long> gammas = {})
        : q_(q), two_exp_(two_exp), pi_half_exp_(pi_half_exp), gammas_(std::move(gammas)) {
        normalize();
    }

    static StructuredScalar pow2(const Rational& e) { return {Rational(1), e, 0}; }
    static StructuredScalar pi_half(long h) { return {Rational(1), Rational(0), h}; }
    // Gamma(x) for a reduced argument x in (0,1), x != 1/2.
    static StructuredScalar gamma_atom(const Rational& x, long power = 1) {
        return {Rational(1), Rational(0), 0, {{x, power}}};
    }

    const Rational& q() const { return q_; }
    const Rational& two_exp() const { return two_exp_; }
    long pi_half_exp() const { return pi_half_exp_; }
    const std::map<Rational, long>& gammas() const { return gammas_; }

    bool is_zero() const { return sgn(q_) == 0; }
    // True when the value is a rational number.
    bool is_rational() const { return pi_half_exp_ == 0 && gammas_.empty() && is_integer(two_exp_); }
    Rational to_rational() const {
        if (!is_rational()) throw NotExact("structured scalar is not rational");
        return q_ * detail::pow2_rational(to_long(two_exp_));
    }

    StructuredScalar inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        std::map<Rational, long> g;
        detail::merge_powers(g, gammas_, -1);
        return {1 / q_, -two_exp_, -pi_half_exp_, std::move(g)};
    }

    friend StructuredScalar operator*(const StructuredScalar& a, const StructuredScalar& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::map<Rational, long> g = a.gammas_;
        detail::merge_powers(g, b.gammas_, 1);
        return {a.q_ * b.q_, a.two_exp_ + b.two_exp_, a.pi_half_exp_ + b.pi_half_exp_, std::move(g)};
    }
    friend StructuredScalar operator/(const StructuredScalar& a, const StructuredScalar& b) { return a * b.inverse(); }
    friend StructuredScalar operator-(const StructuredScalar& a) {
        StructuredScalar r = a;
        r.q_ = -r.q_;
        return r;
    }
    StructuredScalar& operator*=(const StructuredScalar& b) { return *this = *this * b; }
    StructuredScalar& operator/=(const StructuredScalar& b) { return *this = *this / b; }

    friend bool operator==(const StructuredScalar& a, const StructuredScalar& b) {
        return a.q_ == b.q_ && a.two_exp_ == b.two_exp_ && a.pi_half_exp_ == b.pi_half_exp_ && a.gammas_ == b.gammas_;
    }

    // Same transcendental part, so that a / b is rational.
    bool commensurable(const StructuredScalar& b) const {
        return pi_half_exp_ == b.pi_half_exp_ && gammas_ == b.gammas_ && is_integer(two_exp_ - b.two_exp_);
    }

    BigC to_bigc(long prec = default_precision()) const {
        if (is_zero()) return BigC(prec);
        long work = prec + 16;
        Real v(q_, work);
        v *= detail::pow2_real(two_exp_, work);
        if (pi_half_exp_ != 0) v *= detail::pi_half_power(pi_half_exp_, work);
        for (const auto& [x, e] : gammas_) {
            Real g = trilinear::gamma(BigC(x, work)).re;
            Real p = Real::with_precision(work);
            mpfr_pow_si(p.raw(), g.raw(), e, MPFR_RNDN);
            v *= p;
        }
        return with_precision(BigC(v), prec);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        os << q_.get_str();
        if (sgn(two_exp_) != 0) os << "*2^(" << two_exp_.get_str() << ")";
        if (pi_half_exp_ != 0) os << "*pi^(" << make_rational(pi_half_exp_, 2).get_str() << ")";
        for (const auto& [x, e] : gammas_) os << "*Gamma(" << x.get_str() << ")^" << e;
        return os.str();
    }

private:
    void normalize() {
        q_.canonicalize();
        if (is_zero()) {
            two_exp_ = 0;
            pi_half_exp_ = 0;
            gammas_.clear();
            return;
        }
        long v = detail::two_adic_valuation(q_.get_num()) - detail::two_adic_valuation(q_.get_den());
        if (v != 0) {
            q_ /= detail::pow2_rational(v);
            two_exp_ += v;
        }
    }

    Rational q_ = 0;
    Rational two_exp_ = 0;
    long pi_half_exp_ = 0;
    std::map<Rational, long> gammas_;
};

inline std::ostream& operator<<(std::ostream& os, const StructuredScalar& s) { return os << s.to_string(); }

// (x)_n over exact rationals.
inline Rational pochhammer(const Rational& x, long n) {
    Rational r(1);
    for (long i = 0; i < n; ++i) r *= x + i;
    return r;
}

inline CRational pochhammer(const CRational& x, long n) {
    CRational r(1);
    for (long i = 0; i < n; ++i) r *= x + CRational(i);
    return r;
}

inline BigC pochhammer(const BigC& x, long n) {
    BigC r(Rational(1), x.precision());
    for (long i = 0; i < n; ++i) r *= x + BigC(Rational(i), x.precision());
    return r;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Split x = f + shift with f in (0,1].
struct ReducedArgument {
    Rational base;
    long shift;
};

inline ReducedArgument reduce_argument(const Rational& x) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    long shift = to_long(c) - 1;
    return {x - shift, shift};
}

// Gamma at the reduced base f in (0,1].
inline StructuredScalar gamma_base(const Rational& f) {
    if (f == 1) return StructuredScalar(1);
    if (f == Rational(1, 2)) return StructuredScalar::pi_half(1);
    return StructuredScalar::gamma_atom(f);
}

// Gamma(x) for rational x; throws PoleError at nonpositive integers.
inline StructuredScalar gamma_exact(const Rational& x) {
    if (is_nonpositive_integer(x)) throw PoleError("Gamma pole at " + x.get_str());
    auto [f, shift] = reduce_argument(x);
    StructuredScalar g = gamma_base(f);
    // Gamma(f + shift) = (f)_shift Gamma(f), or Gamma(x) = Gamma(f) / (x)_{-shift}.
    if (shift >= 0) return g * StructuredScalar(pochhammer(f, shift));
    return g / StructuredScalar(pochhammer(x, -shift));
}

inline StructuredScalar rgamma_exact(const Rational& x) {
    if (is_nonpositive_integer(x)) return {};
    return gamma_exact(x).inverse();
}

// Gamma at integers and half-integers, where the result is q * 2^e * pi^(h/2).
inline StructuredScalar gamma_half(const Rational& z) {
    if (!is_half_integer_or_integer(z)) throw std::domain_error("gamma_half needs 2z integer, got " + z.get_str());
    return gamma_exact(z);
}

}  // namespace trilinear
