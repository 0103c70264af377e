#pragma once

// Spectral and geometric coordinates, the affine lines D^{eps,j}_{l,m} whose
// union is the zero set Z, the strata Z1/Z2/Z3 and the planes of poles.

#include "trilinear/numerics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trilinear {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct Ambient {
    int n = 4;
    Rational rho = Rational(3, 2);

    explicit Ambient(int dim = 4) : n(dim), rho(make_rational(dim - 1, 2)) {
        if (dim < 4) throw DomainError("ambient dimension n must be >= 4, got " + std::to_string(dim));
        rho.canonicalize();
    }
    bool rho_integer() const { return is_integer(rho); }
    // n-1 even exactly when rho is an integer.
    bool even() const { return rho_integer(); }
    friend bool operator==(const Ambient& a, const Ambient& b) { return a.n == b.n; }
};

using Triple = std::array<CRational, 3>;

// Slots are 1,2,3 and wrap around: slot(4) = 1.
inline int slot(int j) { return ((j - 1) % 3 + 3) % 3 + 1; }
inline const CRational& at(const Triple& t, int j) { return t[static_cast<std::size_t>(slot(j) - 1)]; }
inline CRational& at(Triple& t, int j) { return t[static_cast<std::size_t>(slot(j) - 1)]; }

struct SpectralParam {
    Triple lambda;
    Ambient ambient;
};

struct GeometricParam {
    Triple alpha;
    Ambient ambient;
};

inline GeometricParam to_geometric(const SpectralParam& p) {
    GeometricParam g{{}, p.ambient};
    for (int j = 1; j <= 3; ++j)
        at(g.alpha, j) = at(p.lambda, j + 1) + at(p.lambda, j + 2) - at(p.lambda, j) - CRational(p.ambient.rho);
    return g;
}

inline SpectralParam to_spectral(const GeometricParam& g) {
    SpectralParam p{{}, g.ambient};
    for (int j = 1; j <= 3; ++j)
        at(p.lambda, j) = (at(g.alpha, j + 1) + at(g.alpha, j + 2)) * CRational(Rational(1, 2)) + CRational(g.ambient.rho);
    return p;
}

// Nonnegative integer t with x = base - 2t (or x = base - t when step = 1), if any.
inline std::optional<long> ladder_index(const CRational& x, const Rational& base, long step) {
    if (!x.is_real()) return std::nullopt;
    Rational t = (base - x.re) / step;
    if (!is_integer(t) || sgn(t) < 0) return std::nullopt;
    return to_long(t);
}

// alpha_j = -(n-1) - 2k with k in N.
inline std::optional<long> type_one_index(const CRational& alpha_j, const Ambient& amb) {
    return ladder_index(alpha_j, Rational(-(amb.n - 1)), 2);
}

// alpha_1 + alpha_2 + alpha_3 = -2(n-1) - 2k with k in N.
inline std::optional<long> type_two_index(const Triple& alpha, const Ambient& amb) {
    return ladder_index(alpha[0] + alpha[1] + alpha[2], Rational(-2 * (amb.n - 1)), 2);
}

// alpha_j = 2p with p in N.
inline std::optional<long> even_index(const CRational& alpha_j) {
    if (!alpha_j.is_real()) return std::nullopt;
    Rational p = alpha_j.re / 2;
    if (!is_integer(p) || sgn(p) < 0) return std::nullopt;
    return to_long(p);
}

// D^{eps,j}_{l,m}: lambda_j = -rho - l and lambda_{j+1} + eps lambda_{j+2} = m.
// eps = -1 gives the lines of type I, eps = +1 those of type II.
struct Line {
    int eps = -1;
    int j = 1;
    long l = 0;
    long m = 0;

    bool type_one() const { return eps < 0; }
    friend auto operator<=>(const Line&, const Line&) = default;
};

inline bool admissible(int eps, int j, long l, long m) {
    (void)eps;
    (void)j;
    if (l < 0) return false;
    return ((l - m) % 2 == 0) && (m <= l && -m <= l);
}

inline bool admissible(const Line& d) { return admissible(d.eps, d.j, d.l, d.m); }

inline std::string to_string(const Line& d) {
    return std::string("D^{") + (d.eps > 0 ? "+" : "-") + "," + std::to_string(d.j) + "}_{" + std::to_string(d.l) +
           "," + std::to_string(d.m) + "}";
}

inline bool line_contains(const Line& d, const SpectralParam& p) {
    const Rational& rho = p.ambient.rho;
    if (!(at(p.lambda, d.j) == CRational(-rho - d.l))) return false;
    return at(p.lambda, d.j + 1) + CRational(d.eps) * at(p.lambda, d.j + 2) == CRational(d.m);
}

// Membership pins l from lambda_j and then m, so six candidates cover everything.
inline std::vector<Line> lines_through(const SpectralParam& p) {
    std::vector<Line> out;
    for (int j = 1; j <= 3; ++j) {
        auto l = ladder_index(at(p.lambda, j), -p.ambient.rho, 1);
        if (!l) continue;
        for (int eps : {-1, 1}) {
            CRational m = at(p.lambda, j + 1) + CRational(eps) * at(p.lambda, j + 2);
            if (!is_integer(m)) continue;
            Line d{eps, j, *l, to_long(m.re)};
            if (admissible(d)) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Intersection point of two distinct admissible lines, if they meet.
inline std::optional<SpectralParam> intersect_lines(const Line& a, const Line& b, const Ambient& amb) {
    const Rational& rho = amb.rho;
    if (a == b) return std::nullopt;
    SpectralParam p{{}, amb};
    if (a.j == b.j) {
        // Parallel when the types agree or the planes lambda_j = const differ.
        if (a.eps == b.eps || a.l != b.l) return std::nullopt;
        const Line& plus = a.eps > 0 ? a : b;
        const Line& minus = a.eps > 0 ? b : a;
        at(p.lambda, a.j) = CRational(-rho - a.l);
        at(p.lambda, a.j + 1) = CRational(make_rational(plus.m + minus.m, 2));
        at(p.lambda, a.j + 2) = CRational(make_rational(plus.m - minus.m, 2));
        return p;
    }
    // Distinct slots fix two coordinates; each line then predicts the third.
    at(p.lambda, a.j) = CRational(-rho - a.l);
    at(p.lambda, b.j) = CRational(-rho - b.l);
    int third = 6 - a.j - b.j;
    auto predict = [&](const Line& d, int other) {
        // lambda_{d.j+1} + eps lambda_{d.j+2} = m with lambda_other known.
        CRational known = at(p.lambda, other);
        if (slot(d.j + 1) == third) return CRational(d.m) - CRational(d.eps) * known;
        return CRational(d.eps) * (CRational(d.m) - known);
    };
    CRational from_a = predict(a, b.j);
    CRational from_b = predict(b, a.j);
    if (!(from_a == from_b)) return std::nullopt;
    at(p.lambda, third) = from_a;
    return p;
}

enum class StratumTag { NotInZ, Z1_I, Z1_II, Z2_I, Z2_II, Z3 };

inline std::string to_string(StratumTag t) {
    switch (t) {
        case StratumTag::NotInZ: return "NotInZ";
        case StratumTag::Z1_I: return "Z1_I";
        case StratumTag::Z1_II: return "Z1_II";
        case StratumTag::Z2_I: return "Z2_I";
        case StratumTag::Z2_II: return "Z2_II";
        case StratumTag::Z3: return "Z3";
    }
    return "?";
}

// The integer data of the matching normal form, after relabeling the slots.
// permutation[i] is the original slot placed in normalized slot i+1.
struct Witness {
    std::array<int, 3> permutation{1, 2, 3};
    std::string variant;  // "general"/"special" on Z1, "odd"/"even" on Z2_II and Z3
    std::map<std::string, Rational> values;

    long integer(const std::string& key) const { return to_long(values.at(key)); }
};

struct Stratum {
    StratumTag tag = StratumTag::NotInZ;
    std::vector<Line> lines;
    Witness witness;
};

inline Triple permuted(const Triple& t, const std::array<int, 3>& perm) {
    return {at(t, perm[0]), at(t, perm[1]), at(t, perm[2])};
}

inline std::array<int, 3> cyclic_from(int j) { return {slot(j), slot(j + 1), slot(j + 2)}; }

namespace detail {

inline Witness z1_one_witness(const Line& d, const Triple& alpha, const Ambient& amb) {
    Witness w;
    w.permutation = cyclic_from(d.j);
    Triple a = permuted(alpha, w.permutation);
    long k2 = (d.l + d.m) / 2;
    long k3 = (d.l - d.m) / 2;
    w.values["k2"] = k2;
    w.values["k3"] = k3;
    w.variant = "general";
    if (auto k = type_two_index(a, amb)) {
        // alpha_1 = -2 p1 with k = p1 + k2 + k3
        w.variant = "special";
        w.values["k"] = *k;
        w.values["p1"] = *k - k2 - k3;
    }
    if (a[0].is_real()) w.values["alpha1"] = a[0].re;
    return w;
}

inline Witness z1_two_witness(const Line& d, const Triple& alpha, const Ambient& amb) {
    Witness w;
    w.permutation = cyclic_from(d.j);
    long k = (d.l - d.m) / 2;
    long p = d.l - k;
    w.values["l"] = d.l;
    w.values["m"] = d.m;
    w.values["k"] = k;
    w.values["p"] = p;
    w.variant = "general";
    Triple a = permuted(alpha, w.permutation);
    for (int swap = 0; swap < 2; ++swap) {
        // normal form (2p, -(n-1) - 2 k2, -(n-1) + 2q) with q >= 1
        std::array<int, 3> perm = w.permutation;
        if (swap) std::swap(perm[1], perm[2]);
        Triple b = permuted(alpha, perm);
        if (auto k2 = type_one_index(b[1], amb)) {
            w.variant = "special";
            w.permutation = perm;
            w.values["k2"] = *k2;
            w.values["q"] = (b[2].re + (amb.n - 1)) / 2;
            break;
        }
    }
    (void)a;
    return w;
}

}  // namespace detail

inline Stratum classify_stratum(const SpectralParam& p) {
    Stratum s;
    s.lines = lines_through(p);
    const Ambient& amb = p.ambient;
    Triple alpha = to_geometric(p).alpha;
    switch (s.lines.size()) {
        case 0: s.tag = StratumTag::NotInZ; break;
        case 1:
            if (s.lines[0].type_one()) {
                s.tag = StratumTag::Z1_I;
                s.witness = detail::z1_one_witness(s.lines[0], alpha, amb);
            } else {
                s.tag = StratumTag::Z1_II;
                s.witness = detail::z1_two_witness(s.lines[0], alpha, amb);
            }
            break;
        case 2: {
            const Line& a = s.lines[0];
            const Line& b = s.lines[1];
            if (a.type_one() != b.type_one()) {
                // D^{+,j} and D^{-,j} through (-rho - l1, m2, m3) in slot order j, j+1, j+2
                s.tag = StratumTag::Z2_I;
                Witness& w = s.witness;
                w.permutation = cyclic_from(a.j);
                Triple lam = permuted(p.lambda, w.permutation);
                Triple al = permuted(alpha, w.permutation);
                w.values["l1"] = a.l;
                w.values["m2"] = lam[1].re;
                w.values["m3"] = lam[2].re;
                w.values["k1"] = al[0].re / 2;
                w.values["k2"] = *type_one_index(al[1], amb);
                w.values["k3"] = *type_one_index(al[2], amb);
                w.values["k"] = w.values["k2"] + w.values["k3"] - w.values["k1"];
            } else if (!a.type_one()) {
                s.tag = StratumTag::Z2_II;
                Witness& w = s.witness;
                int third = 6 - a.j - b.j;
                w.permutation = cyclic_from(third + 1);
                Triple lam = permuted(p.lambda, w.permutation);
                Triple al = permuted(alpha, w.permutation);
                w.values["k1"] = al[0].re / 2;
                w.values["k2"] = al[1].re / 2;
                w.values["k3"] = (-al[2].re - 2 * (amb.n - 1)) / 2;
                w.values["k"] = w.values["k3"] - w.values["k1"] - w.values["k2"];
                w.values["l1"] = -lam[0].re - amb.rho;
                w.values["l2"] = -lam[1].re - amb.rho;
                w.values["m3"] = lam[2].re - amb.rho;
                w.variant = amb.even() ? "even" : "odd";
            } else {
                throw std::logic_error("two type I lines meeting outside Z3");
            }
            break;
        }
        case 3: {
            s.tag = StratumTag::Z3;
            Witness& w = s.witness;
            for (int j = 1; j <= 3; ++j) {
                std::string idx = std::to_string(j);
                w.values["k" + idx] = *type_one_index(at(alpha, j), amb);
                w.values["l" + idx] = -at(p.lambda, j).re - amb.rho;
            }
            w.variant = amb.even() ? "even" : "odd";
            if (amb.even()) w.values["k"] = amb.rho + w.values["k1"] + w.values["k2"] + w.values["k3"];
            break;
        }
        default: throw std::logic_error("a point on more than three lines of Z");
    }
    return s;
}

// Stratum from the explicit coordinate conditions in alpha, without enumerating lines.
inline StratumTag classify_closed_form(const GeometricParam& g) {
    const Ambient& amb = g.ambient;
    std::array<std::optional<long>, 3> t1;
    for (int j = 0; j < 3; ++j) t1[j] = type_one_index(g.alpha[j], amb);
    auto t2 = type_two_index(g.alpha, amb);
    if (t1[0] && t1[1] && t1[2]) return StratumTag::Z3;
    for (int j = 1; j <= 3; ++j) {
        auto k1 = even_index(at(g.alpha, j));
        auto k2 = t1[slot(j + 1) - 1];
        auto k3 = t1[slot(j + 2) - 1];
        // (2k1, -(n-1)-2k2, -(n-1)-2k3) with k1 <= k2 + k3
        if (k1 && k2 && k3 && *k1 <= *k2 + *k3) return StratumTag::Z2_I;
    }
    if (t2) {
        for (int j = 1; j <= 3; ++j) {
            auto k1 = even_index(at(g.alpha, j + 1));
            auto k2 = even_index(at(g.alpha, j + 2));
            // (2k1, 2k2, -2(n-1)-2k3) with k1 + k2 <= k3, the third slot being j
            if (k1 && k2) {
                Rational k3 = (-at(g.alpha, j).re - 2 * (amb.n - 1)) / 2;
                if (is_integer(k3) && k3 >= *k1 + *k2) return StratumTag::Z2_II;
            }
        }
    }
    for (int j = 1; j <= 3; ++j) {
        auto k2 = t1[slot(j + 1) - 1];
        auto k3 = t1[slot(j + 2) - 1];
        if (!k2 || !k3) continue;
        // the free coordinate avoids -(n-1)-2N and {0, 2, ..., 2(k2+k3)}
        auto p = even_index(at(g.alpha, j));
        if (!t1[slot(j) - 1] && !(p && *p <= *k2 + *k3)) return StratumTag::Z1_I;
    }
    if (t2) {
        for (int j = 1; j <= 3; ++j)
            if (even_index(at(g.alpha, j))) return StratumTag::Z1_II;
    }
    return StratumTag::NotInZ;
}

struct PoleProfile {
    std::vector<std::pair<int, long>> type_one_planes;  // (slot j, k_j)
    std::optional<long> type_two_plane;                 // k
    std::string label;
};

inline PoleProfile pole_profile(const GeometricParam& g) {
    PoleProfile pp;
    for (int j = 1; j <= 3; ++j)
        if (auto k = type_one_index(at(g.alpha, j), g.ambient)) pp.type_one_planes.emplace_back(j, *k);
    pp.type_two_plane = type_two_index(g.alpha, g.ambient);
    bool one = !pp.type_one_planes.empty();
    bool two = pp.type_two_plane.has_value();
    if (!one && !two)
        pp.label = "not a pole";
    else if (one && two)
        pp.label = "type I+II";
    else if (two)
        pp.label = "generic type II";
    else if (pp.type_one_planes.size() == 1)
        pp.label = "generic type I";
    else
        pp.label = "type I (" + std::to_string(pp.type_one_planes.size()) + " planes)";
    return pp;
}

}  // namespace trilinear
