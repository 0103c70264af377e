#pragma once

#include "trilinear/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <string>
#include <utility>

namespace trilinear {

constexpr long kMinPrecision = 64;
constexpr long kDefaultPrecision = 256;

namespace detail {
inline long env_precision() {
    const char* env = std::getenv("TRILIN_PRECISION_BITS");
    if (!env) return kDefaultPrecision;
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end == env || bits < kMinPrecision) return kDefaultPrecision;
    return bits;
}

inline long& precision_slot() {
    thread_local long bits = env_precision();
    return bits;
}
}  // namespace detail

inline long default_precision() { return detail::precision_slot(); }

// Sets the working precision of the current thread for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : saved_(detail::precision_slot()) {
        detail::precision_slot() = std::max(bits, kMinPrecision);
    }
    ~PrecisionScope() { detail::precision_slot() = saved_; }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    long saved_;
};

// RAII handle over an mpfr_t. Binary operations take the larger operand precision.
class Real {
public:
    Real() : Real(0L, default_precision()) {}
    explicit Real(long v, long prec = default_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    explicit Real(const Rational& q, long prec = default_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real with_precision(long prec) { return Real(0L, prec); }

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return is_zero() ? LONG_MIN : static_cast<long>(mpfr_get_exp(v_)); }

    std::string to_string(int digits = 0) const {
        if (is_zero()) return "0";
        mpfr_exp_t e = 0;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string m(s);
        mpfr_free_str(s);
        std::string sign;
        if (!m.empty() && m[0] == '-') {
            sign = "-";
            m.erase(0, 1);
        }
        return sign + "0." + m + "e" + std::to_string(static_cast<long>(e));
    }

#define TRILIN_REAL_BINOP(op, fn)                                              \
    friend Real operator op(const Real& a, const Real& b) {                    \
        Real r = with_precision(std::max(a.precision(), b.precision()));      \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                       \
        return r;                                                              \
    }                                                                          \
    Real& operator op##=(const Real & b) { return *this = *this op b; }
    TRILIN_REAL_BINOP(+, mpfr_add)
    TRILIN_REAL_BINOP(-, mpfr_sub)
    TRILIN_REAL_BINOP(*, mpfr_mul)
    TRILIN_REAL_BINOP(/, mpfr_div)
#undef TRILIN_REAL_BINOP

    friend Real operator-(const Real& a) {
        Real r = with_precision(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    template <class Fn>
    Real apply(Fn fn) const {
        Real r = with_precision(precision());
        fn(r.v_, v_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

inline Real abs(const Real& x) { return x.apply(mpfr_abs); }
inline Real sqrt(const Real& x) { return x.apply(mpfr_sqrt); }
inline Real exp(const Real& x) { return x.apply(mpfr_exp); }
inline Real log(const Real& x) { return x.apply(mpfr_log); }
inline Real sin(const Real& x) { return x.apply(mpfr_sin); }
inline Real cos(const Real& x) { return x.apply(mpfr_cos); }

inline Real atan2(const Real& y, const Real& x) {
    Real r = Real::with_precision(std::max(x.precision(), y.precision()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline Real hypot(const Real& x, const Real& y) {
    Real r = Real::with_precision(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline Real const_pi(long prec = default_precision()) {
    Real r = Real::with_precision(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline Real const_euler(long prec = default_precision()) {
    Real r = Real::with_precision(prec);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}

inline Real const_log2(long prec = default_precision()) {
    Real r = Real::with_precision(prec);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

inline Real ldexp(const Real& x, long e) {
    Real r = x;
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

// Big-precision complex number as a pair of MPFR reals.
struct BigC {
    Real re;
    Real im;

    BigC() = default;
    explicit BigC(long prec) : re(Real::with_precision(prec)), im(Real::with_precision(prec)) {}
    BigC(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigC(Real r) : re(std::move(r)), im(Real::with_precision(re.precision())) {}
    explicit BigC(const CRational& z, long prec = default_precision()) : re(z.re, prec), im(z.im, prec) {}
    explicit BigC(const Rational& q, long prec = default_precision()) : re(q, prec), im(0L, prec) {}

    long precision() const { return std::max(re.precision(), im.precision()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend BigC operator+(const BigC& a, const BigC& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigC operator-(const BigC& a, const BigC& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigC operator-(const BigC& a) { return {-a.re, -a.im}; }
    friend BigC operator*(const BigC& a, const BigC& b) {
        if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
        if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigC operator/(const BigC& a, const BigC& b) {
        if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigC& operator+=(const BigC& b) { return *this = *this + b; }
    BigC& operator-=(const BigC& b) { return *this = *this - b; }
    BigC& operator*=(const BigC& b) { return *this = *this * b; }
    BigC& operator/=(const BigC& b) { return *this = *this / b; }
};

inline Real abs(const BigC& z) { return hypot(z.re, z.im); }

inline BigC exp(const BigC& z) {
    Real m = exp(z.re);
    if (z.im.is_zero()) return BigC(m, Real::with_precision(m.precision()));
    return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch.
inline BigC log(const BigC& z) { return {log(abs(z)), atan2(z.im, z.re)}; }

inline BigC with_precision(const BigC& z, long prec) {
    BigC r(prec);
    mpfr_set(r.re.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_set(r.im.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

// |a-b| / max(|a|,|b|), or |a-b| when both vanish.
inline Real relative_error(const BigC& a, const BigC& b) {
    Real diff = abs(a - b);
    Real scale = std::max(abs(a), abs(b), [](const Real& x, const Real& y) { return x < y; });
    if (scale.is_zero()) return diff;
    return diff / scale;
}

}  // namespace trilinear
