#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trilinear {

using Integer = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline bool is_half_integer_or_integer(const Rational& r) {
    return r.get_den() == 1 || r.get_den() == 2;
}

inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// Throws when the value does not fit a long; callers only use this on small grid indices.
inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return z.get_si();
}

inline long to_long(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.get_str());
    return to_long(Integer(r.get_num()));
}

inline bool is_nonpositive_integer(const Rational& r) { return is_integer(r) && sgn(r) <= 0; }

// Accepts "p", "p/q", "-p/q" with optional leading '+'.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    auto ok_digits = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = s;
    std::string_view unsigned_body = body;
    if (!unsigned_body.empty() && unsigned_body.front() == '-') unsigned_body.remove_prefix(1);
    auto slash = unsigned_body.find('/');
    std::string_view num = unsigned_body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : unsigned_body.substr(slash + 1);
    if (!ok_digits(num) || (slash != std::string_view::npos && !ok_digits(den)))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + std::string(text) + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Exact Gaussian rational re + im*i.
struct CRational {
    Rational re;
    Rational im;

    CRational() = default;
    CRational(Rational r) : re(std::move(r)) { re.canonicalize(); }
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    CRational(long v) : re(v) {}
    CRational(int v) : re(v) {}

    bool is_real() const { return sgn(im) == 0; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    CRational& operator+=(const CRational& o) { re += o.re; im += o.im; return *this; }
    CRational& operator-=(const CRational& o) { re -= o.re; im -= o.im; return *this; }
    CRational& operator*=(const CRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    CRational& operator/=(const CRational& o) {
        Rational d = o.re * o.re + o.im * o.im;
        if (sgn(d) == 0) throw std::domain_error("division by zero");
        Rational r = (re * o.re + im * o.im) / d;
        Rational i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend CRational operator+(CRational a, const CRational& b) { return a += b; }
    friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
    friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
    friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
    friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator<(const CRational& a, const CRational& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    }
};

inline bool is_integer(const CRational& z) { return z.is_real() && is_integer(z.re); }
inline bool is_nonpositive_integer(const CRational& z) { return z.is_real() && is_nonpositive_integer(z.re); }

inline std::string to_string(const CRational& z) {
    if (z.is_real()) return z.re.get_str();
    std::string out;
    if (sgn(z.re) != 0) out = z.re.get_str();
    if (sgn(z.im) >= 0 && !out.empty()) out += '+';
    out += z.im.get_str();
    out += 'i';
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const CRational& z) { return os << to_string(z); }

// Accepts "p/q", "p/q+r/si", "p/q-r/s i", "r/si" (the imaginary unit may follow a space).
inline CRational parse_crational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw ParseError("empty number");
    if (s.back() != 'i') return CRational(parse_rational(s));
    s.pop_back();
    // split at the last sign that is not the leading character
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    auto imag_of = [&](std::string t) {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        return parse_rational(t);
    };
    if (split == std::string::npos) return CRational(Rational(0), imag_of(s));
    return CRational(parse_rational(s.substr(0, split)), imag_of(s.substr(split)));
}

}  // namespace trilinear
