#pragma once

// Scalar layer: exact rationals, structured exact scalars, MPFR complex numbers,
// second order jets, Pochhammer symbols and the reciprocal Gamma function.

#include "trilinear/bigfloat.hpp"
#include "trilinear/domains.hpp"
#include "trilinear/exact_sum.hpp"
#include "trilinear/jet.hpp"
#include "trilinear/rational.hpp"
#include "trilinear/special.hpp"
#include "trilinear/structured.hpp"

namespace trilinear {

inline StructuredScalar rgamma(const Rational& z) { return rgamma_exact(z); }

inline BigC rgamma(const CRational& z, long prec = default_precision()) {
    return NumericDomain{prec}.rgamma(Lin(z));
}

// Germ of 1/Gamma along z(s) = z0 + z1 s + z2 s^2 with rational coefficients.
inline Jet2<ExactSum> rgamma(const Jet2<Rational>& z) {
    Jet2<ExactSum> g = ExactJetDomain{}.rgamma(Lin(CRational(z.c0), CRational(1)));
    return {g.c0, g.c1 * ExactSum(z.c1), g.c1 * ExactSum(z.c2) + g.c2 * ExactSum(z.c1 * z.c1)};
}

// Numeric germ: shift until Re z0 >= 2 with 1/Gamma(z) = z 1/Gamma(z+1), then
// expand log(1/Gamma) with digamma and trigamma.
inline Jet2<BigC> rgamma(const Jet2<BigC>& z) {
    long prec = z.c0.precision();
    BigC one(Rational(1), prec);
    Jet2<BigC> shifted = z;
    Jet2<BigC> prod(one, BigC(prec), BigC(prec));
    while (shifted.c0.re.to_double() < 2.0) {
        prod *= shifted;
        shifted.c0 += one;
    }
    BigC g = rgamma(shifted.c0);
    BigC psi = digamma(shifted.c0);
    BigC psi1 = trigamma(shifted.c0);
    BigC g1 = -(g * psi);
    BigC g2 = g * (psi * psi - psi1) * BigC(Rational(1, 2), prec);
    Jet2<BigC> base{g, g1 * shifted.c1, g1 * shifted.c2 + g2 * shifted.c1 * shifted.c1};
    return prod * base;
}

}  // namespace trilinear
