#pragma once

// Taylor probes of the coefficient functions along affine curves, and the
// verification engine: identities between families, derivative lemmas, the
// Bernstein-Sato chain, ranks of generator lists, zero sets, and the F1 pattern
// at even Z3 points.

#include "trilinear/coefficients.hpp"
#include "trilinear/diag_system.hpp"

#include <functional>
#include <sstream>

namespace trilinear {

struct HypothesisError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateGridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- probes --------------------------------------------------------------

struct ProbeSpec {
    std::variant<SpectralParam, GeometricParam> base;
    Triple direction;  // in the coordinates of base
    int order = 2;
};

using ProbeJet = std::variant<Jet2<ExactSum>, Jet2<BigC>>;

inline LinTriple along(const Triple& base, const Triple& dir) {
    return {Lin(base[0], dir[0]), Lin(base[1], dir[1]), Lin(base[2], dir[2])};
}

inline const Ambient& ambient_of(const ProbeSpec& probe) {
    return std::visit([](const auto& p) -> const Ambient& { return p.ambient; }, probe.base);
}

// K~ along the probe curve in any domain.
template <class D>
typename D::Value probe_value(const D& d, const ProbeSpec& probe, const MultiIndex& a) {
    if (const auto* lam = std::get_if<SpectralParam>(&probe.base))
        return formula::ktilde_lambda(d, along(lam->lambda, probe.direction), lam->ambient, a);
    const auto& g = std::get<GeometricParam>(probe.base);
    return formula::ktilde_alpha(d, along(g.alpha, probe.direction), g.ambient, a);
}

inline ProbeJet taylor_probe(const ProbeSpec& probe, const MultiIndex& a, EvalMode mode = EvalMode::Auto) {
    if (probe.direction[0].is_zero() && probe.direction[1].is_zero() && probe.direction[2].is_zero())
        throw DomainError("probe direction must be nonzero");
    ProbeJet out;
    bool done = false;
    if (mode != EvalMode::Numeric) {
        try {
            out = probe_value(ExactJetDomain{}, probe, a);
            done = true;
        } catch (const NotExact&) {
            if (mode == EvalMode::Exact) throw;
        }
    }
    if (!done) out = probe_value(NumericJetDomain{default_precision()}, probe, a);
    if (probe.order == 1) {
        std::visit([](auto& j) { j.c2 = j.c1 - j.c1; }, out);
    }
    return out;
}

inline Germ probe_germ(const ProbeSpec& probe, const MultiIndex& a) { return probe_value(GermDomain{}, probe, a); }

// ---- reports -------------------------------------------------------------

struct VerifyReport {
    std::string suite;
    long checks = 0;
    long failures = 0;
    double max_relative_error = 0;  // numeric comparisons only
    std::vector<std::string> details;

    bool ok() const { return failures == 0 && checks > 0; }
    void fail(const std::string& what) {
        ++failures;
        if (details.size() < 20) details.push_back(what);
    }
    void merge(const VerifyReport& o) {
        checks += o.checks;
        failures += o.failures;
        max_relative_error = std::max(max_relative_error, o.max_relative_error);
        for (const auto& d : o.details)
            if (details.size() < 20) details.push_back(d);
    }
};

inline std::string to_string(const MultiIndex& a) {
    return "(" + std::to_string(a.a1) + "," + std::to_string(a.a2) + "," + std::to_string(a.a3) + ")";
}

// Relative tolerance for numeric agreement at the working precision.
inline double numeric_tolerance(long prec) { return std::ldexp(1.0, -static_cast<int>(prec * 5 / 8)); }

inline double relative_gap(const BigC& a, const BigC& b) {
    if (a.is_zero() && b.is_zero()) return 0;
    return relative_error(a, b).to_double();
}

inline void compare_values(VerifyReport& rep, const std::string& label, const CoeffValue& lhs, const CoeffValue& rhs) {
    ++rep.checks;
    if (is_exact(lhs) && is_exact(rhs)) {
        if (!(std::get<StructuredScalar>(lhs) == std::get<StructuredScalar>(rhs)))
            rep.fail(label + ": " + std::get<StructuredScalar>(lhs).to_string() +
                     " != " + std::get<StructuredScalar>(rhs).to_string());
        return;
    }
    long prec = default_precision();
    double gap = relative_gap(to_bigc(lhs, prec), to_bigc(rhs, prec));
    rep.max_relative_error = std::max(rep.max_relative_error, gap);
    if (!(gap <= numeric_tolerance(prec))) rep.fail(label + ": relative error " + std::to_string(gap));
}

inline std::vector<MultiIndex> grid(long A) {
    std::vector<MultiIndex> out;
    for (long a1 = 0; a1 <= A; ++a1)
        for (long a2 = 0; a2 <= A; ++a2)
            for (long a3 = 0; a3 <= A; ++a3) out.push_back({a1, a2, a3});
    return out;
}

// ---- identity suites -----------------------------------------------------

// K~ at alpha3 = -(n-1)-2k against the T~ family.
inline VerifyReport verify_kt(const CRational& a1, const CRational& a2, long k, long A, const Ambient& amb,
                              EvalMode mode = EvalMode::Auto) {
    VerifyReport rep{"kt"};
    LinTriple al{Lin(a1), Lin(a2), Lin(Rational(-(amb.n - 1) - 2 * k))};
    const Rational& rho = amb.rho;
    for (const auto& a : grid(A)) {
        auto lhs = evaluate(mode, [&](const auto& d) { return formula::ktilde_alpha(d, al, amb, a); });
        auto rhs = evaluate(mode, [&](const auto& d) {
            return d.rational(sign_power(k)) * d.pow2(Lin(Rational(-2 * k))) * d.pi_half(amb.n - 1) *
                   d.rgamma(Lin(rho + k)) * d.rgamma(al[0] / 2 + Lin(rho)) * d.rgamma(al[1] / 2 + Lin(rho)) *
                   formula::ttilde3(d, al[0], al[1], k, amb, a);
        });
        compare_values(rep, "KT k=" + std::to_string(k) + " a=" + to_string(a), lhs, rhs);
    }
    return rep;
}

template <class D>
typename D::Value ks_constant_value(const D& d, const Ambient& amb, long k) {
    return d.pi_half(2 * (amb.n - 1)) * d.pow2(Lin(Rational(-5 * (amb.n - 1) - 4 * k))) *
           d.rational(factorial_q(amb.n - 2)) * d.rgamma(Lin(amb.rho + k));
}

// K~ on the plane sum(lambda) = -rho-2k against S^(k).
inline VerifyReport verify_ks(const CRational& l1, const CRational& l2, long k, long A, const Ambient& amb,
                              EvalMode mode = EvalMode::Auto) {
    VerifyReport rep{"ks"};
    SpectralParam p{{l1, l2, CRational(-amb.rho - 2 * k) - l1 - l2}, amb};
    LinTriple lam = lift(p.lambda);
    LinTriple al = lift(to_geometric(p).alpha);
    for (const auto& a : grid(A)) {
        auto lhs = evaluate(mode, [&](const auto& d) { return formula::ktilde_lambda(d, lam, amb, a); });
        auto rhs = evaluate(mode, [&](const auto& d) {
            auto v = ks_constant_value(d, amb, k) * formula::s_family(d, lam, k, amb, a);
            for (int j = 0; j < 3; ++j) v *= d.rgamma(-al[static_cast<std::size_t>(j)] / 2);
            return v;
        });
        compare_values(rep, "KS k=" + std::to_string(k) + " a=" + to_string(a), lhs, rhs);
    }
    return rep;
}

// K~ at alpha3 = 2l against R^(3,l).
inline VerifyReport verify_rk(const CRational& a1, const CRational& a2, long l, long A, const Ambient& amb,
                              EvalMode mode = EvalMode::Auto) {
    VerifyReport rep{"rk"};
    LinTriple al{Lin(a1), Lin(a2), Lin(Rational(2 * l))};
    for (const auto& a : grid(A)) {
        auto lhs = evaluate(mode, [&](const auto& d) { return formula::ktilde_alpha(d, al, amb, a); });
        auto rhs = evaluate(mode, [&](const auto& d) {
            return d.rgamma(Lin(amb.rho + l)) * d.rgamma((al[0] + al[1]) / 2 + Lin(2 * amb.rho + l)) *
                   formula::r3(d, al[0], al[1], l, amb, a);
        });
        compare_values(rep, "RK l=" + std::to_string(l) + " a=" + to_string(a), lhs, rhs);
    }
    return rep;
}

// On sum(alpha) = -2(n-1), K~ applied to the constant 1 against the sphere volume.
inline VerifyReport verify_k0ints(const CRational& a1, const CRational& a2, const Ambient& amb,
                                  EvalMode mode = EvalMode::Auto) {
    VerifyReport rep{"k0ints"};
    LinTriple al{Lin(a1), Lin(a2), Lin(CRational(Rational(-2 * (amb.n - 1))) - a1 - a2)};
    MultiIndex zero{};
    auto lhs = evaluate(mode, [&](const auto& d) { return formula::ktilde_alpha(d, al, amb, zero); });
    auto rhs = evaluate(mode, [&](const auto& d) {
        auto v = d.pi_half(2 * (amb.n - 1)) *
                 d.pow2(Lin(Rational(-4 * (amb.n - 1)) - make_rational(amb.n - 1, 2))) *
                 d.rational(factorial_q(amb.n - 2)) * d.rgamma(Lin(amb.rho)) * formula::sint1(d, Lin(0), amb);
        for (const auto& x : al) v *= d.rgamma(-x / 2);
        return v;
    });
    compare_values(rep, "K0intS", lhs, rhs);
    return rep;
}

// ---- derivative lemmas -----------------------------------------------------

enum class DerivativeLemma {
    DerKT,         // Z1_I: d/ds K~(a1, a2+2s, a3) = c T~^(3,k3)
    KTZ2I,         // Z2_I: d/ds K~(a1, a2, a3+2s) = c T~^(3,k3), and the 2 <-> 3 mirror
    DKZ2I,         // Z2_I: R, T~(2), T~(3), S derivatives all proportional (rank one)
    KSZ2II,        // Z2_II: second derivative along (-1,1,0) in lambda = gamma S^(k)
    DerKZ2II,      // Z2_II: d/ds K~(a1, a2, a3+s) = c R^(1,k1)
};

inline std::string to_string(DerivativeLemma l) {
    switch (l) {
        case DerivativeLemma::DerKT: return "derKT";
        case DerivativeLemma::KTZ2I: return "KTZ2I";
        case DerivativeLemma::DKZ2I: return "dKZ2I";
        case DerivativeLemma::KSZ2II: return "KSZ2II";
        default: return "derKZ2II";
    }
}

// Integer data for a lemma point: DerKT uses (alpha1, k2, k3); the Z2 lemmas use (k1, k2, k3).
struct LemmaPoint {
    Ambient ambient{5};
    Rational alpha1;
    long k1 = 0;
    long k2 = 0;
    long k3 = 0;
};

namespace detail {

inline ExactSum first_order(const ProbeSpec& probe, const MultiIndex& a, int which) {
    auto jet = std::get<Jet2<ExactSum>>(taylor_probe(probe, a, EvalMode::Exact));
    return which == 0 ? jet.c0 : which == 1 ? jet.c1 : jet.c2;
}

inline void compare_jet(VerifyReport& rep, const std::string& label, const ExactSum& jet, const StructuredScalar& c,
                        const CoeffValue& family) {
    ++rep.checks;
    ExactSum rhs(c * std::get<StructuredScalar>(family));
    if (!(jet == rhs)) rep.fail(label + ": jet " + jet.to_string() + " vs " + rhs.to_string());
}

inline StructuredScalar sgn_fact(long k) { return StructuredScalar(sign_power(k) * factorial_q(k)); }

}  // namespace detail

// Z2_I normal form alpha = (2k1, -(n-1)-2k2, -(n-1)-2k3).
inline GeometricParam z2i_point(const LemmaPoint& pt) {
    const Ambient& amb = pt.ambient;
    if (pt.k1 < 0 || pt.k2 < 0 || pt.k3 < 0 || pt.k1 > pt.k2 + pt.k3)
        throw HypothesisError("Z2_I needs k1, k2, k3 >= 0 and k1 <= k2 + k3");
    return {{CRational(2 * pt.k1), CRational(-(amb.n - 1) - 2 * pt.k2), CRational(-(amb.n - 1) - 2 * pt.k3)}, amb};
}

// Z2_II normal form alpha = (2k1, 2k2, -2(n-1)-2k3), k = k3-k1-k2 >= 0.
inline GeometricParam z2ii_point(const LemmaPoint& pt) {
    const Ambient& amb = pt.ambient;
    if (pt.k1 < 0 || pt.k2 < 0 || pt.k3 < pt.k1 + pt.k2)
        throw HypothesisError("Z2_II needs k1, k2 >= 0 and k3 >= k1 + k2");
    return {{CRational(2 * pt.k1), CRational(2 * pt.k2), CRational(-2 * (amb.n - 1) - 2 * pt.k3)}, amb};
}

inline VerifyReport verify_derivative_lemma(DerivativeLemma lemma, const LemmaPoint& pt, long A) {
    VerifyReport rep{to_string(lemma)};
    const Ambient& amb = pt.ambient;
    const Rational& rho = amb.rho;
    auto pi_rho = StructuredScalar::pi_half(amb.n - 1);
    auto dir = [](long x, long y, long z) { return Triple{CRational(x), CRational(y), CRational(z)}; };
    switch (lemma) {
        case DerivativeLemma::DerKT: {
            GeometricParam g{{CRational(pt.alpha1), CRational(-(amb.n - 1) - 2 * pt.k2),
                              CRational(-(amb.n - 1) - 2 * pt.k3)},
                             amb};
            if (type_one_index(g.alpha[0], amb) || (is_integer(pt.alpha1 / 2) && pt.alpha1 <= 2 * (pt.k2 + pt.k3)))
                throw HypothesisError("derKT needs alpha1 outside -(n-1)-2N and 2(k2+k3)-2N");
            ProbeSpec probe{g, dir(0, 2, 0), 1};
            StructuredScalar c = StructuredScalar(sign_power(pt.k3)) * StructuredScalar::pow2(Rational(-2 * pt.k3)) *
                                 pi_rho * detail::sgn_fact(pt.k2) * rgamma_exact(rho + pt.k3) *
                                 rgamma_exact(rho + pt.alpha1 / 2);
            for (const auto& a : grid(A))
                detail::compare_jet(rep, "derKT a=" + to_string(a), detail::first_order(probe, a, 1), c,
                                    ttilde_coeff(3, pt.k3, {g.alpha[0], g.alpha[1]}, amb, a, EvalMode::Exact));
            break;
        }
        case DerivativeLemma::KTZ2I: {
            GeometricParam g = z2i_point(pt);
            StructuredScalar base = pi_rho * StructuredScalar(sign_power(pt.k3 + pt.k2)) * rgamma_exact(rho + pt.k1);
            StructuredScalar c3 = base * StructuredScalar::pow2(Rational(-2 * pt.k3)) *
                                  StructuredScalar(factorial_q(pt.k2)) * rgamma_exact(rho + pt.k3);
            StructuredScalar c2 = base * StructuredScalar::pow2(Rational(-2 * pt.k2)) *
                                  StructuredScalar(factorial_q(pt.k3)) * rgamma_exact(rho + pt.k2);
            ProbeSpec s3{g, dir(0, 0, 2), 1}, s2{g, dir(0, 2, 0), 1};
            for (const auto& a : grid(A)) {
                detail::compare_jet(rep, "KTZ2I slot 3 a=" + to_string(a), detail::first_order(s3, a, 1), c3,
                                    ttilde_coeff(3, pt.k3, {g.alpha[0], g.alpha[1]}, amb, a, EvalMode::Exact));
                detail::compare_jet(rep, "KTZ2I slot 2 a=" + to_string(a), detail::first_order(s2, a, 1), c2,
                                    ttilde_coeff(2, pt.k2, {g.alpha[2], g.alpha[0]}, amb, a, EvalMode::Exact));
            }
            break;
        }
        case DerivativeLemma::DKZ2I: {
            GeometricParam g = z2i_point(pt);
            SpectralParam p = to_spectral(g);
            long k = pt.k2 + pt.k3 - pt.k1;
            long l1 = pt.k2 + pt.k3;
            StructuredScalar cr = detail::sgn_fact(k) * rgamma_exact(rho + pt.k1);
            StructuredScalar cs = StructuredScalar(2) * ks_constant(amb, k) * detail::sgn_fact(l1 - k) *
                                  rgamma_exact(rho + k + p.lambda[1].re) * rgamma_exact(rho + k + p.lambda[2].re);
            ProbeSpec sr{g, dir(0, 1, 1), 1};
            ProbeSpec ss{p, dir(2, -1, -1), 1};
            ProbeSpec s3{g, dir(0, 0, 2), 1}, s2{g, dir(0, 2, 0), 1};
            for (const auto& a : grid(A)) {
                ExactSum jr = detail::first_order(sr, a, 1);
                ExactSum js = detail::first_order(ss, a, 1);
                detail::compare_jet(rep, "dR a=" + to_string(a), jr, cr,
                                    r_coeff(1, pt.k1, {g.alpha[1], g.alpha[2]}, amb, a, EvalMode::Exact));
                detail::compare_jet(rep, "dS a=" + to_string(a), js, cs, s_coeff(k, p, a, EvalMode::Exact));
            }
            // rank of the four derivative vectors, each normalized by the R derivative's monomial
            std::vector<std::vector<CRational>> mat;
            std::vector<ProbeSpec> specs{sr, ss, s3, s2};
            StructuredScalar ref;
            bool have_ref = false;
            for (const auto& probe : specs) {
                std::vector<CRational> row;
                for (const auto& a : grid(A)) {
                    StructuredScalar st;
                    if (!detail::first_order(probe, a, 1).as_structured(st)) {
                        rep.fail("derivative with mixed transcendental terms at a=" + to_string(a));
                        row.emplace_back();
                        continue;
                    }
                    if (st.is_zero()) {
                        row.emplace_back();
                        continue;
                    }
                    if (!have_ref) {
                        ref = st;
                        have_ref = true;
                    }
                    StructuredScalar ratio = st / ref;
                    if (!ratio.is_rational()) {
                        rep.fail("derivatives not commensurable at a=" + to_string(a));
                        row.emplace_back();
                        continue;
                    }
                    row.emplace_back(ratio.to_rational());
                }
                mat.push_back(std::move(row));
            }
            ++rep.checks;
            std::size_t rank = exact_pivots(mat, mat.front().size()).size();
            if (rank != 1) rep.fail("differential has rank " + std::to_string(rank) + ", expected 1");
            break;
        }
        case DerivativeLemma::KSZ2II: {
            GeometricParam g = z2ii_point(pt);
            SpectralParam p = to_spectral(g);
            long k = pt.k3 - pt.k1 - pt.k2;
            // second derivative = gamma S, i.e. c2 = gamma / 2 S
            StructuredScalar gamma = StructuredScalar(-2) * ks_constant(amb, k) * detail::sgn_fact(pt.k1) *
                                     detail::sgn_fact(pt.k2) * rgamma_exact(Rational(amb.n - 1 + pt.k3));
            ProbeSpec probe{p, dir(-1, 1, 0), 2};
            for (const auto& a : grid(A))
                detail::compare_jet(rep, "KSZ2II a=" + to_string(a), detail::first_order(probe, a, 2),
                                    gamma * StructuredScalar(Rational(1, 2)), s_coeff(k, p, a, EvalMode::Exact));
            break;
        }
        case DerivativeLemma::DerKZ2II: {
            GeometricParam g = z2ii_point(pt);
            long k = pt.k3 - pt.k1 - pt.k2;
            StructuredScalar c = detail::sgn_fact(k) * StructuredScalar(Rational(1, 2)) * rgamma_exact(rho + pt.k1);
            ProbeSpec probe{g, dir(0, 0, 1), 1};
            for (const auto& a : grid(A))
                detail::compare_jet(rep, "derKZ2II a=" + to_string(a), detail::first_order(probe, a, 1), c,
                                    r_coeff(1, pt.k1, {g.alpha[1], g.alpha[2]}, amb, a, EvalMode::Exact));
            break;
        }
    }
    return rep;
}

// Q against the second order coefficient of K~ along (0,2,0) in lambda at a Z2_I point.
inline VerifyReport verify_q_oracle(const LemmaPoint& pt, long A) {
    VerifyReport rep{"q_oracle"};
    GeometricParam g = z2i_point(pt);
    ProbeSpec probe{to_spectral(g), {CRational(0), CRational(2), CRational(0)}, 2};
    Z2IIndices z{pt.k1, pt.k2, pt.k3};
    for (const auto& a : grid(A))
        detail::compare_jet(rep, "Q a=" + to_string(a), detail::first_order(probe, a, 2), StructuredScalar(1),
                            q_coeff(z, pt.ambient, a, EvalMode::Exact));
    return rep;
}

// ---- Bernstein-Sato chain --------------------------------------------------

// b(alpha) K(alpha) against E(1x1) applied through the shifts alpha3 + 2 and alpha3 + 4.
inline VerifyReport verify_bernstein_chain(const GeometricParam& g) {
    VerifyReport rep{"bernstein"};
    const Ambient& amb = g.ambient;
    auto shifted = [&](long by) {
        GeometricParam h = g;
        h.alpha[2] = h.alpha[2] + CRational(by);
        return h;
    };
    auto [top, constant] = e_one_one_alpha(g);
    CRational b = bernstein_b_exact(g);
    try {
        CoeffValue k0 = k111(g), k2 = k111(shifted(2)), k4 = k111(shifted(4));
        ++rep.checks;
        if (is_exact(k0) && is_exact(k2) && is_exact(k4) && b.is_real() && top.is_real() && constant.is_real()) {
            ExactSum lhs = ExactSum(top.re) * ExactSum(std::get<StructuredScalar>(k4)) +
                           ExactSum(constant.re) * ExactSum(std::get<StructuredScalar>(k2));
            ExactSum rhs = ExactSum(b.re) * ExactSum(std::get<StructuredScalar>(k0));
            if (!(lhs == rhs)) rep.fail("chain at alpha=" + to_string(g.alpha[0]) + "," + to_string(g.alpha[1]) + "," +
                                        to_string(g.alpha[2]));
        } else {
            long prec = default_precision();
            BigC lhs = BigC(top, prec) * to_bigc(k4, prec) + BigC(constant, prec) * to_bigc(k2, prec);
            BigC rhs = BigC(b, prec) * to_bigc(k0, prec);
            double gap = relative_gap(lhs, rhs);
            rep.max_relative_error = std::max(rep.max_relative_error, gap);
            if (!(gap <= numeric_tolerance(prec))) rep.fail("chain numeric gap " + std::to_string(gap));
        }
    } catch (const PoleError&) {
        // sample sits on a Gamma pole of K(1,1,1): skipped
    }
    // (S + 2n)(a3 + n + 1) - (n-1)(a1 + a2 + 2 a3 + 2n + 2) = (S + n + 1)(a3 + 2)
    CRational n(amb.n), one(1), two(2);
    CRational sum = g.alpha[0] + g.alpha[1] + g.alpha[2];
    const CRational& a3 = g.alpha[2];
    CRational left = (sum + two * n) * (a3 + n + one) - (n - one) * (g.alpha[0] + g.alpha[1] + two * a3 + two * n + two);
    CRational right = (sum + n + one) * (a3 + two);
    ++rep.checks;
    if (!(left == right)) rep.fail("polynomial identity");
    return rep;
}

// ---- ranks -----------------------------------------------------------------

enum class FamilyKind { K, T, R, S, Q };

struct FamilyId {
    FamilyKind kind = FamilyKind::K;
    int slot = 3;     // distinguished slot for T, R, Q
    long index = 0;   // k for T and S, l for R
};

inline std::string to_string(const FamilyId& f) {
    switch (f.kind) {
        case FamilyKind::K: return "K";
        case FamilyKind::T: return "T(" + std::to_string(f.slot) + "," + std::to_string(f.index) + ")";
        case FamilyKind::R: return "R(" + std::to_string(f.slot) + "," + std::to_string(f.index) + ")";
        case FamilyKind::S: return "S(" + std::to_string(f.index) + ")";
        default: return "Q(" + std::to_string(f.slot) + ")";
    }
}

// Coefficient of a family at a point; T, R use the pair (alpha_{j+1}, alpha_{j+2}),
// Q reads (k1, k2, k3) from alpha with slot j playing the role of slot 1.
template <class D>
typename D::Value family_value(const D& d, const FamilyId& f, const SpectralParam& p, const MultiIndex& a) {
    const Ambient& amb = p.ambient;
    GeometricParam g = to_geometric(p);
    LinTriple al = lift(g.alpha);
    int j = f.slot;
    switch (f.kind) {
        case FamilyKind::K: return formula::ktilde_alpha(d, al, amb, a);
        case FamilyKind::T: return formula::ttilde3(d, at(al, j + 1), at(al, j + 2), f.index, amb, a.last(j));
        case FamilyKind::R: return formula::r3(d, at(al, j + 1), at(al, j + 2), f.index, amb, a.last(j));
        case FamilyKind::S:
            if (!on_type_two_plane(p, f.index)) throw ConstraintError("S^(k) off its plane");
            return formula::s_family(d, lift(p.lambda), f.index, amb, a);
        default: {
            auto k1 = even_index(at(g.alpha, j));
            auto k2 = type_one_index(at(g.alpha, j + 1), amb);
            auto k3 = type_one_index(at(g.alpha, j + 2), amb);
            if (!k1 || !k2 || !k3 || *k1 > *k2 + *k3) throw HypothesisError("Q needs a Z2_I normal form at its slot");
            return formula::q_family(d, *k1, *k2, *k3, amb, a.first(j));
        }
    }
}

inline CoeffValue family_coeff(const FamilyId& f, const SpectralParam& p, const MultiIndex& a,
                               EvalMode mode = EvalMode::Auto) {
    return evaluate(mode, [&](const auto& d) { return family_value(d, f, p, a); });
}

struct RankReport {
    std::vector<FamilyId> families;
    long grid_bound = 0;
    std::size_t rows = 0;  // grid points
    std::size_t cols = 0;  // families
    long rank = 0;
    bool exact = true;
    long precision = 0;  // numeric mode only
};

namespace detail {

// Numeric rank by full pivoting; returns -1 when a pivot decision is too close to the threshold.
inline long numeric_rank(std::vector<std::vector<BigC>> m, long prec) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m.front().size();
    // scale every family row to unit max
    for (auto& row : m) {
        Real mx(0L, prec);
        for (const auto& x : row) {
            Real v = hypot(x.re, x.im);
            if (v > mx) mx = v;
        }
        if (!mx.is_zero())
            for (auto& x : row) x = x / BigC(mx, Real(0L, prec));
    }
    Real threshold = ldexp(Real(1L, prec), -prec / 2);
    Real margin = ldexp(Real(1L, prec), 2);
    long rank = 0;
    for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
        std::size_t pr = step, pc = 0;
        Real best(0L, prec);
        bool found = false;
        for (std::size_t i = step; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Real v = hypot(m[i][j].re, m[i][j].im);
                if (!found || v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        if (best < threshold * margin && best * margin > threshold) return -1;
        if (best < threshold) break;
        std::swap(m[pr], m[step]);
        BigC piv = m[step][pc];
        for (std::size_t i = step + 1; i < rows; ++i) {
            BigC f = m[i][pc] / piv;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[step][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Rank of the matrix (family i, multi-index a) over the cube a <= A.
inline RankReport rank_check(const std::vector<FamilyId>& families, const SpectralParam& p, long A) {
    RankReport rep{families, A, 0, families.size(), 0, true, 0};
    auto pts = grid(A);
    rep.rows = pts.size();
    std::vector<std::vector<CoeffValue>> values;
    bool all_exact = true;
    for (const auto& f : families) {
        std::vector<CoeffValue> row;
        row.reserve(pts.size());
        for (const auto& a : pts) {
            row.push_back(family_coeff(f, p, a));
            all_exact = all_exact && is_exact(row.back());
        }
        values.push_back(std::move(row));
    }
    bool any_nonzero = false;
    for (const auto& row : values)
        for (const auto& v : row) any_nonzero = any_nonzero || !is_zero(v);
    if (!any_nonzero) throw DegenerateGridError("all coefficients vanish on the grid; raise A");

    if (all_exact) {
        // divide each family row by its first nonzero entry; exact if every quotient is rational
        std::vector<std::vector<CRational>> mat;
        bool rational = true;
        for (const auto& row : values) {
            std::vector<CRational> r;
            r.reserve(row.size());
            const StructuredScalar* ref = nullptr;
            for (const auto& v : row) {
                const auto& s = std::get<StructuredScalar>(v);
                if (s.is_zero()) {
                    r.emplace_back();
                    continue;
                }
                if (!ref) ref = &s;
                StructuredScalar q = s / *ref;
                if (!q.is_rational()) {
                    rational = false;
                    break;
                }
                r.emplace_back(q.to_rational());
            }
            if (!rational) break;
            mat.push_back(std::move(r));
        }
        if (rational) {
            rep.rank = static_cast<long>(exact_pivots(mat, pts.size()).size());
            return rep;
        }
    }
    rep.exact = false;
    for (long prec = default_precision();; prec *= 2) {
        std::vector<std::vector<BigC>> m;
        for (const auto& row : values) {
            std::vector<BigC> r;
            r.reserve(row.size());
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (is_exact(row[i]) || prec == default_precision())
                    r.push_back(to_bigc(row[i], prec));
                else
                    r.push_back(to_bigc(family_coeff(families[&row - values.data()], p, pts[i], EvalMode::Numeric),
                                        prec));
            }
            m.push_back(std::move(r));
        }
        long rank = detail::numeric_rank(std::move(m), prec);
        if (rank >= 0 || prec >= 4096) {
            rep.rank = std::max(rank, 0L);
            rep.precision = prec;
            return rep;
        }
        PrecisionScope scope(prec * 2);
    }
}

inline long default_grid_bound(long family_k_sum) { return std::max(6L, family_k_sum + 4); }

// Generators of Tri(lambda) listed by the multiplicity theorems, in the witness frame.
struct GeneratorSet {
    SpectralParam point;  // lambda with slots relabeled by the witness permutation
    std::vector<FamilyId> families;
    long k_sum = 0;       // sum of the family integer parameters (for the grid bound)
};

inline GeneratorSet generators(const SpectralParam& p) {
    Stratum s = classify_stratum(p);
    GeneratorSet out{{permuted(p.lambda, s.witness.permutation), p.ambient}, {}, 0};
    const Witness& w = s.witness;
    auto v = [&](const char* key) { return w.integer(key); };
    switch (s.tag) {
        case StratumTag::NotInZ: out.families = {{FamilyKind::K, 3, 0}}; break;
        case StratumTag::Z1_I:
            out.families = {{FamilyKind::T, 2, v("k2")}, {FamilyKind::T, 3, v("k3")}};
            out.k_sum = v("k2") + v("k3");
            break;
        case StratumTag::Z1_II:
            out.families = {{FamilyKind::R, 1, v("p")}, {FamilyKind::S, 3, v("k")}};
            out.k_sum = v("p") + v("k");
            break;
        case StratumTag::Z2_I:
            out.families = {{FamilyKind::R, 1, v("k1")}, {FamilyKind::Q, 1, 0}};
            out.k_sum = v("k1") + v("k2") + v("k3");
            break;
        case StratumTag::Z2_II:
            out.families = {{FamilyKind::R, 1, v("k1")}, {FamilyKind::S, 3, v("k")}};
            out.k_sum = v("k1") + v("k2") + v("k3");
            break;
        case StratumTag::Z3:
            out.families = {{FamilyKind::T, 1, v("k1")}, {FamilyKind::T, 2, v("k2")}, {FamilyKind::T, 3, v("k3")}};
            out.k_sum = v("k1") + v("k2") + v("k3");
            break;
    }
    return out;
}

// ---- zero set ----------------------------------------------------------------

inline bool zero_set_check(const SpectralParam& p, long A) {
    for (const auto& a : grid(A))
        if (!is_zero(ktilde_lambda(p, a))) return false;
    return true;
}

// ---- F1 at even Z3 points ------------------------------------------------------

struct F1Report {
    long checks = 0;
    long failures = 0;
    long region_points = 0;      // multi-indices inside the lemma's region
    long nonzero_points = 0;     // multi-indices with F1 != 0
    std::vector<std::string> details;
    bool ok() const { return failures == 0 && region_points > 0; }
};

// F(s) = K~(alpha + s(1,1,1)) / s^2 up to a nonzero constant; F1 != 0 exactly when the
// germ of K~ has order 3. Checks: order >= 2 everywhere (F holomorphic), F1 != 0 on
// the lemma's region, and F1 = 0 wherever at least two zero factors beyond the
// required pair occur.
inline F1Report f1_jet_vanishing_check(const SpectralParam& p, long A) {
    Stratum s = classify_stratum(p);
    if (s.tag != StratumTag::Z3 || !p.ambient.even())
        throw HypothesisError("F1 pattern needs a Z3 point with n-1 even");
    const Witness& w = s.witness;
    long k1 = w.integer("k1"), k2 = w.integer("k2"), k3 = w.integer("k3"), k = w.integer("k");
    GeometricParam g = to_geometric(p);
    ProbeSpec probe{g, {CRational(1), CRational(1), CRational(1)}, 2};
    F1Report rep;
    for (const auto& a : grid(A)) {
        Germ germ = probe_germ(probe, a);
        long order = germ.zero ? 1000 : germ.order;
        bool f1 = order == 3;
        bool region = a.a1 <= k1 && a.a2 > k1 + k2 && a.a3 > k1 + k3 && a.sum() > k;
        // zero count read off the factors of the closed form
        long count = (a.sum() > k) + (a.a1 > k1) + (a.a2 > k2) + (a.a3 > k3) + (a.a1 + a.a2 <= k1 + k2) +
                     (a.a2 + a.a3 <= k2 + k3) + (a.a3 + a.a1 <= k3 + k1);
        ++rep.checks;
        rep.region_points += region;
        rep.nonzero_points += f1;
        std::string at = "a=" + to_string(a);
        if (order < 2) {
            ++rep.failures;
            rep.details.push_back(at + ": order " + std::to_string(order) + " < 2");
        }
        if (order != count) {
            ++rep.failures;
            rep.details.push_back(at + ": germ order " + std::to_string(order) + " vs factor count " +
                                  std::to_string(count));
        }
        if (region && !f1) {
            ++rep.failures;
            rep.details.push_back(at + ": F1 vanishes inside the region");
        }
    }
    return rep;
}

}  // namespace trilinear
