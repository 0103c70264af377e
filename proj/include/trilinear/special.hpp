#pragma once

// Complex log-Gamma, reciprocal Gamma, digamma and trigamma at MPFR precision.
// All three use the same recipe: shift the argument to the right half plane
// with the recurrence, then sum the Stirling-type asymptotic series whose
// coefficients are exact Bernoulli numbers.

#include "trilinear/bigfloat.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace trilinear {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

// B_0, B_1, B_2, ... computed exactly and cached process-wide.
inline const Rational& bernoulli(std::size_t m) {
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= m) {
        std::size_t k = table.size();
        // sum_{j<k} C(k+1, j) B_j + (k+1) B_k = 0
        Rational sum = 0;
        Integer binom = 1;  // C(k+1, 0)
        for (std::size_t j = 0; j < k; ++j) {
            sum += Rational(binom) * table[j];
            binom = binom * Integer(static_cast<long>(k + 1 - j)) / Integer(static_cast<long>(j + 1));
        }
        Rational b = -sum / Rational(static_cast<long>(k + 1));
        b.canonicalize();
        table.push_back(b);
    }
    return table[m];
}

inline long guard_bits(long prec) { return prec + 32; }

// Shift threshold: the series error near |w| = R decays like exp(-2 pi R).
inline long shift_threshold(long prec) { return static_cast<long>(0.12 * static_cast<double>(prec)) + 8; }

inline long shift_count(const BigC& z, long prec) {
    double re = z.re.to_double();
    double need = static_cast<double>(shift_threshold(prec)) - re;
    return need > 0 ? static_cast<long>(std::ceil(need)) : 0;
}

inline bool below(const Real& term, const Real& ref, long prec) {
    if (term.is_zero()) return true;
    if (ref.is_zero()) return false;
    return term.exponent() < ref.exponent() - prec - 2;
}

// ln Gamma(w) for Re w large, up to a multiple of 2 pi i.
inline BigC lgamma_asymptotic(const BigC& w, long prec) {
    BigC half(Rational(1, 2), prec);
    BigC lw = log(w);
    BigC result = (w - half) * lw - w;
    Real two_pi = ldexp(const_pi(prec), 1);
    result.re += ldexp(log(two_pi), -1);
    BigC inv = BigC(Rational(1), prec) / w;
    BigC inv2 = inv * inv;
    BigC power = inv;
    for (std::size_t k = 1; k < 4 * static_cast<std::size_t>(prec); ++k) {
        Rational c = bernoulli(2 * k) / Rational(static_cast<long>(2 * k * (2 * k - 1)));
        BigC term = BigC(c, prec) * power;
        result += term;
        if (below(abs(term), abs(result), prec)) break;
        power *= inv2;
    }
    return result;
}

inline BigC digamma_asymptotic(const BigC& w, long prec) {
    BigC inv = BigC(Rational(1), prec) / w;
    BigC result = log(w) - BigC(Rational(1, 2), prec) * inv;
    BigC inv2 = inv * inv;
    BigC power = inv2;
    for (std::size_t k = 1; k < 4 * static_cast<std::size_t>(prec); ++k) {
        Rational c = bernoulli(2 * k) / Rational(static_cast<long>(2 * k));
        BigC term = BigC(c, prec) * power;
        result -= term;
        if (below(abs(term), abs(result), prec)) break;
        power *= inv2;
    }
    return result;
}

inline BigC trigamma_asymptotic(const BigC& w, long prec) {
    BigC inv = BigC(Rational(1), prec) / w;
    BigC inv2 = inv * inv;
    BigC result = inv + BigC(Rational(1, 2), prec) * inv2;
    BigC power = inv2 * inv;
    for (std::size_t k = 1; k < 4 * static_cast<std::size_t>(prec); ++k) {
        BigC term = BigC(bernoulli(2 * k), prec) * power;
        result += term;
        if (below(abs(term), abs(result), prec)) break;
        power *= inv2;
    }
    return result;
}

inline bool exact_nonpositive_integer(const BigC& z) {
    if (!z.im.is_zero()) return false;
    if (z.re.sign() > 0) return false;
    return mpfr_integer_p(z.re.raw()) != 0;
}

}  // namespace detail

// 1/Gamma(z); exactly 0 when z is a nonpositive integer.
inline BigC rgamma(const BigC& z) {
    long prec = z.precision();
    if (detail::exact_nonpositive_integer(z)) return BigC(prec);
    long work = detail::guard_bits(prec);
    BigC w = with_precision(z, work);
    long shift = detail::shift_count(w, work);
    BigC prod(Rational(1), work);
    for (long i = 0; i < shift; ++i) {
        prod *= w;
        w += BigC(Rational(1), work);
    }
    BigC r = prod * exp(-detail::lgamma_asymptotic(w, work));
    return with_precision(r, prec);
}

inline BigC gamma(const BigC& z) {
    if (detail::exact_nonpositive_integer(z)) throw PoleError("Gamma pole at nonpositive integer");
    long prec = z.precision();
    long work = detail::guard_bits(prec);
    BigC r = BigC(Rational(1), work) / rgamma(with_precision(z, work));
    return with_precision(r, prec);
}

inline BigC digamma(const BigC& z) {
    if (detail::exact_nonpositive_integer(z)) throw PoleError("digamma pole at nonpositive integer");
    long prec = z.precision();
    long work = detail::guard_bits(prec);
    BigC w = with_precision(z, work);
    long shift = detail::shift_count(w, work);
    BigC correction(work);
    for (long i = 0; i < shift; ++i) {
        correction += BigC(Rational(1), work) / w;
        w += BigC(Rational(1), work);
    }
    return with_precision(detail::digamma_asymptotic(w, work) - correction, prec);
}

inline BigC trigamma(const BigC& z) {
    if (detail::exact_nonpositive_integer(z)) throw PoleError("trigamma pole at nonpositive integer");
    long prec = z.precision();
    long work = detail::guard_bits(prec);
    BigC w = with_precision(z, work);
    long shift = detail::shift_count(w, work);
    BigC correction(work);
    for (long i = 0; i < shift; ++i) {
        correction += BigC(Rational(1), work) / (w * w);
        w += BigC(Rational(1), work);
    }
    return with_precision(detail::trigamma_asymptotic(w, work) + correction, prec);
}

}  // namespace trilinear
