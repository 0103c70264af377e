#pragma once

// Closed forms for the K-coefficients of the families K~, T~, S, R, Q on the
// basis multi-indices, plus the scalar identities of the Bernstein-Sato chain.
// Each closed form is a template over an evaluation domain (see domains.hpp)
// so the same code yields exact values, high precision values and jets.

#include "trilinear/parameter_space.hpp"

#include <array>
#include <utility>
#include <variant>

namespace trilinear {

struct ConstraintError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MultiIndex {
    long a1 = 0;
    long a2 = 0;
    long a3 = 0;

    long sum() const { return a1 + a2 + a3; }
    long operator[](int j) const {
        switch (slot(j)) {
            case 1: return a1;
            case 2: return a2;
            default: return a3;
        }
    }
    // Relabel so that slot j becomes the last one: (a_{j+1}, a_{j+2}, a_j).
    MultiIndex last(int j) const { return {(*this)[j + 1], (*this)[j + 2], (*this)[j]}; }
    // Relabel so that slot j becomes the first one: (a_j, a_{j+1}, a_{j+2}).
    MultiIndex first(int j) const { return {(*this)[j], (*this)[j + 1], (*this)[j + 2]}; }
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

using LinTriple = std::array<Lin, 3>;

inline LinTriple lift(const Triple& t) { return {Lin(t[0]), Lin(t[1]), Lin(t[2])}; }

inline const Lin& at(const LinTriple& t, int j) { return t[static_cast<std::size_t>(slot(j) - 1)]; }

using CoeffValue = std::variant<StructuredScalar, BigC>;

enum class EvalMode { Auto, Exact, Numeric };

inline bool is_zero(const CoeffValue& v) {
    return std::visit([](const auto& x) { return x.is_zero(); }, v);
}

inline BigC to_bigc(const CoeffValue& v, long prec = default_precision()) {
    if (const auto* s = std::get_if<StructuredScalar>(&v)) return s->to_bigc(prec);
    return std::get<BigC>(v);
}

inline bool is_exact(const CoeffValue& v) { return std::holds_alternative<StructuredScalar>(v); }

// Runs f in the exact domain when possible, else numerically.
template <class F>
CoeffValue evaluate(EvalMode mode, F&& f) {
    if (mode != EvalMode::Numeric) {
        try {
            return CoeffValue(f(ExactDomain{}));
        } catch (const NotExact&) {
            if (mode == EvalMode::Exact) throw;
        }
    }
    return CoeffValue(f(NumericDomain{default_precision()}));
}

inline Rational sign_power(long k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }
inline Rational factorial_q(long k) { return Rational(factorial(k)); }

namespace formula {

// Bernstein-Reznikov value in geometric coordinates.
template <class D>
typename D::Value ktilde_alpha(const D& d, const LinTriple& al, const Ambient& amb, const MultiIndex& a) {
    const Rational& rho = amb.rho;
    Lin sum = al[0] + al[1] + al[2];
    auto v = d.pi_half(3 * (amb.n - 1)) * d.pow2(sum + Lin(-3 * rho + 2 * a.sum()));
    v *= d.poch(sum / 2 + Lin(2 * rho), a.sum());
    for (int j = 1; j <= 3; ++j) v *= d.poch(at(al, j) / 2 + Lin(rho), a[j]);
    for (int j = 1; j <= 3; ++j)
        v *= d.rgamma((at(al, j) + at(al, j + 1)) / 2 + Lin(2 * rho + a[j] + a[j + 1]));
    return v;
}

// The same value in spectral coordinates.
template <class D>
typename D::Value ktilde_lambda(const D& d, const LinTriple& lam, const Ambient& amb, const MultiIndex& a) {
    const Rational& rho = amb.rho;
    Lin sum = lam[0] + lam[1] + lam[2];
    auto v = d.pi_half(3 * (amb.n - 1)) * d.pow2(sum + Lin(Rational(-3 * (amb.n - 1) + 2 * a.sum())));
    v *= d.poch((sum + Lin(rho)) / 2, a.sum());
    for (int j = 1; j <= 3; ++j) v *= d.poch((at(lam, j + 1) + at(lam, j + 2) - at(lam, j) + Lin(rho)) / 2, a[j]);
    for (int j = 1; j <= 3; ++j) v *= d.rgamma(at(lam, j) + Lin(rho + a[j + 1] + a[j + 2]));
    return v;
}

// T~^{(3,k)}_{x,y}: slot 3 distinguished, (x, y) the other two geometric coordinates.
template <class D>
typename D::Value ttilde3(const D& d, const Lin& x, const Lin& y, long k, const Ambient& amb, const MultiIndex& a) {
    if (a.a3 > k) return d.rational(0);
    const Rational& rho = amb.rho;
    long r = k - a.a3;
    auto v = d.pi_half(2 * (amb.n - 1)) * d.pow2(x + y + Lin(-5 * rho + 2 * a.sum()));
    v *= d.rational(sign_power(k) * pochhammer(Rational(-k), a.a3));
    v *= d.gamma(Lin(rho + k));
    v *= d.poch((x + y) / 2 + Lin(rho - k), a.sum());
    v *= d.poch(x / 2 + Lin(rho + a.a1 - r), r);
    v *= d.poch(y / 2 + Lin(rho + a.a2 - r), r);
    v *= d.rgamma((x + y) / 2 + Lin(2 * rho + a.a1 + a.a2));
    return v;
}

// R^{(3,l)}_{x,y}.
template <class D>
typename D::Value r3(const D& d, const Lin& x, const Lin& y, long l, const Ambient& amb, const MultiIndex& a) {
    const Rational& rho = amb.rho;
    auto v = d.pi_half(3 * (amb.n - 1)) * d.pow2(x + y + Lin(-3 * rho + 2 * l + 2 * a.sum()));
    v *= d.poch(x / 2 + Lin(rho), a.a1);
    v *= d.poch(y / 2 + Lin(rho), a.a2);
    v *= d.poch((x + y) / 2 + Lin(2 * rho + a.a1 + a.a2), l + a.a3);
    v *= d.rgamma(x / 2 + Lin(2 * rho + l + a.a1 + a.a3));
    v *= d.rgamma(y / 2 + Lin(2 * rho + l + a.a2 + a.a3));
    v *= d.gamma(Lin(rho + l + a.a3));
    return v;
}

// S^{(k)} on the plane lambda_1 + lambda_2 + lambda_3 = -rho - 2k (symmetric in the three slots).
template <class D>
typename D::Value s_family(const D& d, const LinTriple& lam, long k, const Ambient& amb, const MultiIndex& a) {
    if (a.sum() > k) return d.rational(0);
    const Rational& rho = amb.rho;
    auto v = d.pi_half(amb.n - 1) * d.pow2(Lin(3 * rho + 2 * k + 2 * a.sum()));
    v *= d.gamma(Lin(rho + k)) * d.rgamma(Lin(2 * rho));
    v *= d.rational(pochhammer(Rational(-k), a.sum()));
    for (int i = 1; i <= 3; ++i) v *= d.poch(Lin(Rational(-k)) - at(lam, i), a[i]);
    for (int i = 1; i <= 3; ++i) {
        long others = a[i + 1] + a[i + 2];
        v *= d.poch(at(lam, i) + Lin(rho + others), k - others);
    }
    return v;
}

// Q_{l1,m2,m3} in the normal form alpha = (2k1, -(n-1)-2k2, -(n-1)-2k3), k1 <= k2 + k3.
template <class D>
typename D::Value q_family(const D& d, long k1, long k2, long k3, const Ambient& amb, const MultiIndex& a) {
    if (a.a2 + a.a3 <= k2 + k3) return d.rational(0);
    if (a.a2 > k2 && a.a3 > k3) return d.rational(0);
    const Rational& rho = amb.rho;
    long k = k2 + k3 - k1;
    // The a3 <= k3 branch is the a2 <= k2 one with slots 2 and 3 exchanged, up to sign.
    bool second = a.a2 > k2;
    long kk2 = second ? k3 : k2, kk3 = second ? k2 : k3;
    long b2 = second ? a.a3 : a.a2, b3 = second ? a.a2 : a.a3;
    long mm2 = k1 - kk3, mm3 = k1 - kk2;
    Rational c = sign_power(k) * factorial_q(k) * factorial_q(a.sum() - k - 1) * pochhammer(Rational(-kk2), b2) *
                 sign_power(kk3) * factorial_q(kk3) * factorial_q(b3 - kk3 - 1);
    if (second) c = -c;
    auto v = d.pi_half(3 * (amb.n - 1)) * d.pow2(Lin(-3 * (amb.n - 1) - rho - 2 * k + 2 * a.sum()));
    v *= d.rational(c);
    v *= d.poch(Lin(rho + k1), a.a1);
    v *= d.rgamma(Lin(Rational(-kk2 - kk3 + b2 + b3)));
    v *= d.rgamma(Lin(rho + mm2 + b3 + a.a1));
    v *= d.rgamma(Lin(rho + mm3 + b2 + a.a1));
    return v;
}

// K_alpha(1,1,1), the unnormalized integral of the kernel against constants.
template <class D>
typename D::Value k111(const D& d, const LinTriple& al, const Ambient& amb) {
    const Rational& rho = amb.rho;
    Lin sum = al[0] + al[1] + al[2];
    auto v = d.pi_half(3 * (amb.n - 1)) * d.pow2(sum + Lin(-3 * rho));
    v *= d.gamma(sum / 2 + Lin(2 * rho));
    for (int j = 1; j <= 3; ++j) v *= d.gamma(at(al, j) / 2 + Lin(rho));
    for (int j = 1; j <= 3; ++j) v *= d.rgamma((at(al, j) + at(al, j + 1)) / 2 + Lin(2 * rho));
    return v;
}

template <class D>
typename D::Value sint1(const D& d, const Lin& s, const Ambient& amb) {
    return d.pi_half(amb.n - 1) * d.pow2(s + Lin(amb.n - 1)) * d.gamma(s / 2 + Lin(amb.rho)) *
           d.rgamma(s / 2 + Lin(2 * amb.rho));
}

template <class D>
typename D::Value sint2(const D& d, const Lin& s, const Ambient& amb) {
    return d.rational(-1) * d.pi_half(amb.n - 1) * d.pow2(s + Lin(amb.n - 1)) * d.poch(s / 2, 1) *
           d.gamma(s / 2 + Lin(amb.rho)) * d.rgamma(s / 2 + Lin(amb.n));
}

// Double integral of |u-x|^s |t-y|^r |x-y|^2 with dist2 = |u-t|^2.
template <class D>
typename D::Value srint(const D& d, const CRational& s, const CRational& r, const CRational& dist2, const Ambient& amb) {
    CRational n1(amb.n - 1);
    CRational poly = r * s * CRational(Rational(1, 4)) * dist2 + n1 * (r + s) + CRational(2) * n1 * n1;
    Lin hs = Lin(s) / 2, hr = Lin(r) / 2;
    return d.pi_half(2 * (amb.n - 1)) * d.pow2(Lin(s + r) + Lin(2 * (amb.n - 1))) * d.gamma(hs + Lin(amb.rho)) *
           d.gamma(hr + Lin(amb.rho)) * d.rgamma(hs + Lin(amb.n)) * d.rgamma(hr + Lin(amb.n)) * d.poch(Lin(poly), 1);
}

}  // namespace formula

// ---- public entry points -------------------------------------------------

inline CoeffValue ktilde_alpha(const GeometricParam& g, const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::ktilde_alpha(d, lift(g.alpha), g.ambient, a); });
}

inline CoeffValue ktilde_lambda(const SpectralParam& p, const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::ktilde_lambda(d, lift(p.lambda), p.ambient, a); });
}

// T~^{(j,k)} with pair = (alpha_{j+1}, alpha_{j+2}).
inline CoeffValue ttilde_coeff(int j, long k, const std::pair<CRational, CRational>& pair, const Ambient& amb,
                               const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    if (k < 0) throw DomainError("T~ needs k >= 0");
    if (j < 1 || j > 3) throw DomainError("slot must be 1, 2 or 3");
    MultiIndex b = a.last(j);
    return evaluate(mode, [&](const auto& d) {
        return formula::ttilde3(d, Lin(pair.first), Lin(pair.second), k, amb, b);
    });
}

// R^{(j,l)} with pair = (alpha_{j+1}, alpha_{j+2}).
inline CoeffValue r_coeff(int j, long l, const std::pair<CRational, CRational>& pair, const Ambient& amb,
                          const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    if (l < 0) throw DomainError("R needs l >= 0");
    if (j < 1 || j > 3) throw DomainError("slot must be 1, 2 or 3");
    MultiIndex b = a.last(j);
    return evaluate(mode, [&](const auto& d) { return formula::r3(d, Lin(pair.first), Lin(pair.second), l, amb, b); });
}

inline bool on_type_two_plane(const SpectralParam& p, long k) {
    return p.lambda[0] + p.lambda[1] + p.lambda[2] == CRational(-p.ambient.rho - 2 * k);
}

inline CoeffValue s_coeff(long k, const SpectralParam& p, const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    if (k < 0) throw DomainError("S needs k >= 0");
    if (!on_type_two_plane(p, k))
        throw ConstraintError("S^(k) needs lambda1+lambda2+lambda3 = -rho-2k with k = " + std::to_string(k));
    return evaluate(mode, [&](const auto& d) { return formula::s_family(d, lift(p.lambda), k, p.ambient, a); });
}

struct Z2IIndices {
    long k1, k2, k3;
    long l1() const { return k2 + k3; }
    long m2() const { return k1 - k3; }
    long m3() const { return k1 - k2; }
    long k() const { return k2 + k3 - k1; }
};

// (l1, m2, m3) -> (k1, k2, k3), enforcing the Z_{2,I} conditions.
inline Z2IIndices z2i_from_lm(long l1, long m2, long m3) {
    long twice_k1 = l1 + m2 + m3, twice_k2 = l1 + m2 - m3, twice_k3 = l1 - m2 + m3;
    if (twice_k1 % 2 != 0 || twice_k2 % 2 != 0 || twice_k3 % 2 != 0)
        throw ConstraintError("Z2_I needs m2 + m3 and m2 - m3 congruent to l1 mod 2");
    Z2IIndices z{twice_k1 / 2, twice_k2 / 2, twice_k3 / 2};
    if (z.k1 < 0 || z.k2 < 0 || z.k3 < 0 || z.k1 > z.k2 + z.k3)
        throw ConstraintError("Z2_I needs |m2 - m3| <= l1 and m2 + m3 >= ... with k1, k2, k3 >= 0 and k1 <= k2 + k3");
    return z;
}

inline CoeffValue q_coeff(const Z2IIndices& z, const Ambient& amb, const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    if (z.k1 < 0 || z.k2 < 0 || z.k3 < 0 || z.k1 > z.k2 + z.k3)
        throw ConstraintError("Q needs k1, k2, k3 >= 0 and k1 <= k2 + k3");
    return evaluate(mode, [&](const auto& d) { return formula::q_family(d, z.k1, z.k2, z.k3, amb, a); });
}

inline CoeffValue from_crational(const CRational& z) {
    if (z.is_real()) return StructuredScalar(z.re);
    return BigC(z);
}

inline CRational bernstein_b_exact(const GeometricParam& g) {
    const CRational n(g.ambient.n);
    CRational sum = g.alpha[0] + g.alpha[1] + g.alpha[2];
    const CRational& a3 = g.alpha[2];
    return (sum + CRational(2) * (n - CRational(1))) * (sum + n + CRational(1)) * (a3 + n - CRational(1)) *
           (a3 + CRational(2));
}

inline CoeffValue bernstein_b(const GeometricParam& g) { return from_crational(bernstein_b_exact(g)); }

// E(1 x 1) as (coefficient of |u-t|^2, constant term), spectral form.
inline std::pair<CRational, CRational> e_one_one(const CRational& l1, const CRational& l2, const Ambient& amb) {
    CRational rho(amb.rho), one(1), n1(amb.n - 1);
    CRational a = l1 + rho, b = l2 + rho;
    return {a * b * (a + one) * (b + one), CRational(-2) * a * b * n1 * (l1 + l2 + CRational(2))};
}

// The same in geometric form.
inline std::pair<CRational, CRational> e_one_one_alpha(const GeometricParam& g) {
    CRational n(g.ambient.n), one(1), half(Rational(1, 2));
    const auto& al = g.alpha;
    CRational u = (al[1] + al[2]) * half + n - one;
    CRational v = (al[0] + al[2]) * half + n - one;
    return {u * v * (u + one) * (v + one),
            CRational(-1) * u * v * (n - one) * (al[0] + al[1] + CRational(2) * al[2] + CRational(2) * n + CRational(2))};
}

inline CoeffValue k111(const GeometricParam& g, EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::k111(d, lift(g.alpha), g.ambient); });
}

inline CoeffValue sint1(const CRational& s, const Ambient& amb, EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::sint1(d, Lin(s), amb); });
}

inline CoeffValue sint2(const CRational& s, const Ambient& amb, EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::sint2(d, Lin(s), amb); });
}

inline CoeffValue srint(const CRational& s, const CRational& r, const CRational& dist2, const Ambient& amb,
                        EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return formula::srint(d, s, r, dist2, amb); });
}

// Constant c(k) with K~_alpha = c(k) / (Gamma(-a1/2) Gamma(-a2/2) Gamma(-a3/2)) S^(k)
// on the plane alpha1+alpha2+alpha3 = -2(n-1)-2k.
inline StructuredScalar ks_constant(const Ambient& amb, long k) {
    return StructuredScalar::pi_half(2 * (amb.n - 1)) * StructuredScalar::pow2(Rational(-5 * (amb.n - 1) - 4 * k)) *
           StructuredScalar(factorial_q(amb.n - 2)) * rgamma_exact(amb.rho + k);
}

// Constant in front of the integral of f(x,x,x) on the plane sum(alpha) = -2(n-1).
inline StructuredScalar diagonal_integral_constant(const Ambient& amb) {
    return StructuredScalar::pi_half(2 * (amb.n - 1)) *
           StructuredScalar::pow2(Rational(-4 * (amb.n - 1)) - make_rational(amb.n - 1, 2)) *
           StructuredScalar(factorial_q(amb.n - 2)) * rgamma_exact(amb.rho);
}

// The constant at level k obtained by feeding the level 0 constant through the
// k-fold Bernstein-Sato shift alpha3 -> alpha3 + 2k; must equal ks_constant(k).
inline StructuredScalar ks_constant_by_recursion(const Ambient& amb, long k, const Rational& alpha3) {
    Rational sum = Rational(-2 * (amb.n - 1) - 2 * k);
    Rational denom = 1;
    for (long l = 1; l <= k; ++l) denom *= 4 * (sum + (amb.n - 1) + 2 * l) * (alpha3 + 2 * l);
    StructuredScalar ratio = gamma_exact(-alpha3 / 2) * rgamma_exact(-alpha3 / 2 - k);
    return ks_constant(amb, 0) * ratio / StructuredScalar(denom);
}

}  // namespace trilinear
