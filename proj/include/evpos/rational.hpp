#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>
#include <cmath>
#include <string>

namespace evpos {

using Int = long long;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;
using Quad = boost::multiprecision::cpp_bin_float_quad;

// Minimal complex type over Quad, used to re-check float witnesses at higher
// precision.  std::complex is only specified for float/double/long double.
struct QComplex {
    Quad re{0};
    Quad im{0};

    QComplex() = default;
    QComplex(Quad r, Quad i) : re(std::move(r)), im(std::move(i)) {}
    explicit QComplex(const Quad& r) : re(r), im(0) {}

    friend QComplex operator+(const QComplex& a, const QComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend QComplex operator-(const QComplex& a, const QComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend QComplex operator*(const QComplex& a, const QComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QComplex operator/(const QComplex& a, const QComplex& b) {
        Quad d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const QComplex& a, const QComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline QComplex qconj(const QComplex& z) { return {z.re, -z.im}; }
inline Quad qabs(const QComplex& z) {
    using boost::multiprecision::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

inline Quad to_quad(const Rational& q) {
    return q.convert_to<Quad>();
}

// Exact dyadic rational with the same value as the double.
Rational exact_from_double(double x);

std::string rational_to_string(const Rational& q);

}  // namespace evpos
