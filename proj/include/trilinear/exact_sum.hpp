#pragma once

// Finite sums of structured monomials with rational coefficients. A monomial may
// also carry the constants that appear when a Gamma factor is expanded to second
// order: Euler's gamma, ln 2, and digamma/trigamma at reduced rational points.
// Equality is structural; no relation between distinct atoms is used.

#include "trilinear/structured.hpp"

#include <map>
#include <sstream>
#include <string>
#include <tuple>

namespace trilinear {

enum class AtomKind { EulerGamma, Log2, Digamma, Trigamma };

struct Atom {
    AtomKind kind;
    Rational x;  // argument of digamma/trigamma, 0 otherwise

    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.x < b.x;
    }
    friend bool operator==(const Atom& a, const Atom& b) { return a.kind == b.kind && a.x == b.x; }
};

struct Monomial {
    Rational two_frac;  // in [0,1)
    long pi_half = 0;
    std::map<Rational, long> gammas;
    std::map<Atom, long> atoms;

    friend bool operator<(const Monomial& a, const Monomial& b) {
        return std::tie(a.two_frac, a.pi_half, a.gammas, a.atoms) < std::tie(b.two_frac, b.pi_half, b.gammas, b.atoms);
    }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.two_frac == b.two_frac && a.pi_half == b.pi_half && a.gammas == b.gammas && a.atoms == b.atoms;
    }
};

class ExactSum {
public:
    ExactSum() = default;
    ExactSum(long v) : ExactSum(StructuredScalar(v)) {}
    ExactSum(const Rational& q) : ExactSum(StructuredScalar(q)) {}
    ExactSum(const StructuredScalar& s) {
        if (s.is_zero()) return;
        Integer whole = floor_of(s.two_exp());
        Monomial m;
        m.two_frac = s.two_exp() - Rational(whole);
        m.pi_half = s.pi_half_exp();
        m.gammas = s.gammas();
        add_term(std::move(m), s.q() * detail::pow2_rational(to_long(whole)));
    }

    static ExactSum atom(AtomKind kind, const Rational& x = 0) {
        ExactSum r;
        Monomial m;
        m.atoms[{kind, x}] = 1;
        r.add_term(std::move(m), Rational(1));
        return r;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    ExactSum& operator+=(const ExactSum& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ExactSum& operator-=(const ExactSum& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ExactSum operator+(ExactSum a, const ExactSum& b) { return a += b; }
    friend ExactSum operator-(ExactSum a, const ExactSum& b) { return a -= b; }
    friend ExactSum operator-(const ExactSum& a) {
        ExactSum r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend ExactSum operator*(const ExactSum& a, const ExactSum& b) {
        ExactSum r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                Rational coef = ca * cb;
                m.two_frac = ma.two_frac + mb.two_frac;
                if (m.two_frac >= 1) {
                    m.two_frac -= 1;
                    coef *= 2;
                }
                m.pi_half = ma.pi_half + mb.pi_half;
                m.gammas = ma.gammas;
                detail::merge_powers(m.gammas, mb.gammas, 1);
                m.atoms = ma.atoms;
                for (const auto& [at, e] : mb.atoms) m.atoms[at] += e;
                r.add_term(std::move(m), coef);
            }
        return r;
    }
    ExactSum& operator*=(const ExactSum& b) { return *this = *this * b; }
    friend bool operator==(const ExactSum& a, const ExactSum& b) { return a.terms_ == b.terms_; }

    // Only single monomials without atoms are invertible.
    ExactSum inverse() const {
        if (terms_.size() != 1 || !terms_.begin()->first.atoms.empty())
            throw NotExact("inverse of a non-monomial exact sum");
        const auto& [m, c] = *terms_.begin();
        return ExactSum(StructuredScalar(c, m.two_frac, m.pi_half, m.gammas).inverse());
    }
    friend ExactSum operator/(const ExactSum& a, const ExactSum& b) { return a * b.inverse(); }

    // The single structured value when the sum is one atom-free monomial (or zero).
    bool as_structured(StructuredScalar& out) const {
        if (terms_.empty()) {
            out = StructuredScalar();
            return true;
        }
        if (terms_.size() != 1 || !terms_.begin()->first.atoms.empty()) return false;
        const auto& [m, c] = *terms_.begin();
        out = StructuredScalar(c, m.two_frac, m.pi_half, m.gammas);
        return true;
    }

    BigC to_bigc(long prec = default_precision()) const {
        long work = prec + 16;
        BigC sum(work);
        for (const auto& [m, c] : terms_) {
            BigC term = StructuredScalar(c, m.two_frac, m.pi_half, m.gammas).to_bigc(work);
            for (const auto& [at, e] : m.atoms) {
                BigC v = atom_value(at, work);
                for (long i = 0; i < e; ++i) term *= v;
            }
            sum += term;
        }
        return with_precision(sum, prec);
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << StructuredScalar(c, m.two_frac, m.pi_half, m.gammas).to_string();
            for (const auto& [at, e] : m.atoms) os << "*" << atom_name(at) << "^" << e;
        }
        return os.str();
    }

private:
    static BigC atom_value(const Atom& at, long prec) {
        switch (at.kind) {
            case AtomKind::EulerGamma: return BigC(const_euler(prec));
            case AtomKind::Log2: return BigC(const_log2(prec));
            case AtomKind::Digamma: return digamma(BigC(at.x, prec));
            case AtomKind::Trigamma: return trigamma(BigC(at.x, prec));
        }
        return BigC(prec);
    }
    static std::string atom_name(const Atom& at) {
        switch (at.kind) {
            case AtomKind::EulerGamma: return "euler_gamma";
            case AtomKind::Log2: return "ln2";
            case AtomKind::Digamma: return "psi(" + at.x.get_str() + ")";
            case AtomKind::Trigamma: return "psi1(" + at.x.get_str() + ")";
        }
        return "?";
    }

    void add_term(Monomial m, const Rational& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    std::map<Monomial, Rational> terms_;
};

// psi(f) and psi'(f) at a reduced base f in (0,1], with the classical closed
// forms at 1 and 1/2 and opaque atoms elsewhere.
inline ExactSum digamma_exact_base(const Rational& f) {
    ExactSum euler = ExactSum::atom(AtomKind::EulerGamma);
    if (f == 1) return -euler;
    if (f == Rational(1, 2)) return -euler - ExactSum(2) * ExactSum::atom(AtomKind::Log2);
    return ExactSum::atom(AtomKind::Digamma, f);
}

inline ExactSum trigamma_exact_base(const Rational& f) {
    if (f == 1) return ExactSum(StructuredScalar(Rational(1, 6), 0, 4));
    if (f == Rational(1, 2)) return ExactSum(StructuredScalar(Rational(1, 2), 0, 4));
    return ExactSum::atom(AtomKind::Trigamma, f);
}

}  // namespace trilinear
