#pragma once

// Second order truncated power series in one variable s: c0 + c1 s + c2 s^2.

#include "trilinear/exact_sum.hpp"

namespace trilinear {

inline Rational inverse_of(const Rational& x) { return 1 / x; }
inline CRational inverse_of(const CRational& x) { return CRational(1) / x; }
inline BigC inverse_of(const BigC& x) { return BigC(Rational(1), x.precision()) / x; }
inline ExactSum inverse_of(const ExactSum& x) { return x.inverse(); }

template <class T>
struct Jet2 {
    T c0{};
    T c1{};
    T c2{};

    Jet2() = default;
    Jet2(T a0, T a1 = T{}, T a2 = T{}) : c0(std::move(a0)), c1(std::move(a1)), c2(std::move(a2)) {}

    static Jet2 constant(T v, const T& zero) { return {std::move(v), zero, zero}; }

    Jet2& operator+=(const Jet2& b) {
        c0 = c0 + b.c0;
        c1 = c1 + b.c1;
        c2 = c2 + b.c2;
        return *this;
    }
    Jet2& operator-=(const Jet2& b) {
        c0 = c0 - b.c0;
        c1 = c1 - b.c1;
        c2 = c2 - b.c2;
        return *this;
    }
    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator-(const Jet2& a) { return {-a.c0, -a.c1, -a.c2}; }
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
    }
    Jet2& operator*=(const Jet2& b) { return *this = *this * b; }
    friend Jet2 operator*(const Jet2& a, const T& k) { return {a.c0 * k, a.c1 * k, a.c2 * k}; }
    // Needs an invertible leading coefficient.
    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        T inv = inverse_of(b.c0);
        T q0 = a.c0 * inv;
        T q1 = (a.c1 - q0 * b.c1) * inv;
        T q2 = (a.c2 - q0 * b.c2 - q1 * b.c1) * inv;
        return {q0, q1, q2};
    }
    friend bool operator==(const Jet2& a, const Jet2& b) { return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2; }
};

template <class T>
Jet2<T> pochhammer(const Jet2<T>& x, long n, const T& one) {
    Jet2<T> r(one, one - one, one - one);
    Jet2<T> step = x;
    for (long i = 0; i < n; ++i) {
        r *= step;
        step.c0 = step.c0 + one;
    }
    return r;
}

}  // namespace trilinear
