#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "evpos/rational.hpp"

namespace evpos {

using ExponentVector = std::vector<Int>;

class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EvaluationDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Scalar conversion used when evaluating exact coefficients in another ring.
template <typename S>
S scalar_from(const Rational& q);

template <>
inline Rational scalar_from<Rational>(const Rational& q) { return q; }
template <>
inline double scalar_from<double>(const Rational& q) { return to_double(q); }
template <>
inline Complex scalar_from<Complex>(const Rational& q) { return Complex(to_double(q), 0.0); }
template <>
inline Quad scalar_from<Quad>(const Rational& q) { return to_quad(q); }
template <>
inline QComplex scalar_from<QComplex>(const Rational& q) { return QComplex(to_quad(q)); }

template <typename S>
inline bool scalar_is_zero(const S& x) { return x == S(0); }
template <>
inline bool scalar_is_zero<Complex>(const Complex& x) { return x == Complex(0.0, 0.0); }
template <>
inline bool scalar_is_zero<QComplex>(const QComplex& x) { return x.re == 0 && x.im == 0; }

// Integer power with the convention 0^0 = 1.  Negative exponents of zero
// raise EvaluationDomainError.
template <typename S>
S int_power(S base, Int e) {
    if (e < 0) {
        if (scalar_is_zero(base))
            throw EvaluationDomainError("zero raised to a negative power");
        return S(1) / int_power(base, -e);
    }
    S acc(1);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// Sparse Laurent polynomial with exact rational coefficients.  Terms are kept
// in a map ordered lexicographically on the exponent vector, which fixes a
// canonical form used for comparison and printing.  Zero coefficients are
// never stored.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(int nvars = 0) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("negative variable count");
    }

    static LaurentPolynomial constant(int nvars, const Rational& c) {
        LaurentPolynomial p(nvars);
        p.add_term(ExponentVector(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    static LaurentPolynomial monomial(int nvars, const ExponentVector& m, const Rational& c) {
        LaurentPolynomial p(nvars);
        p.add_term(m, c);
        return p;
    }

    static LaurentPolynomial variable(int nvars, int index) {
        ExponentVector m(static_cast<std::size_t>(nvars), 0);
        m.at(static_cast<std::size_t>(index)) = 1;
        return monomial(nvars, m, 1);
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExponentVector, Rational>& terms() const { return terms_; }

    Rational coefficient(const ExponentVector& m) const {
        check_exponent(m);
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const ExponentVector& m, const Rational& c) {
        check_exponent(m);
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::set<ExponentVector> support() const {
        std::set<ExponentVector> s;
        for (const auto& [m, c] : terms_) s.insert(m);
        return s;
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& q) {
        check_same_space(q);
        for (const auto& [m, c] : q.terms_) add_term(m, c);
        return *this;
    }

    LaurentPolynomial& operator-=(const LaurentPolynomial& q) {
        check_same_space(q);
        for (const auto& [m, c] : q.terms_) add_term(m, -c);
        return *this;
    }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        a += b;
        return a;
    }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
        a -= b;
        return a;
    }
    friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
        LaurentPolynomial r(a.nvars_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        a.check_same_space(b);
        LaurentPolynomial r(a.nvars_);
        ExponentVector m(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    friend LaurentPolynomial operator*(const Rational& c, const LaurentPolynomial& a) {
        LaurentPolynomial r(a.nvars_);
        if (c == 0) return r;
        for (const auto& [m, cc] : a.terms_) r.terms_.emplace(m, c * cc);
        return r;
    }

    // p^k by iterated multiplication, reusing the previous power.
    LaurentPolynomial pow(long long k) const {
        if (k < 0) throw std::invalid_argument("negative power of a polynomial");
        LaurentPolynomial r = constant(nvars_, 1);
        for (long long i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    template <typename S>
    S evaluate(const std::vector<S>& x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw DimensionMismatchError("evaluation point has wrong dimension");
        S total(0);
        for (const auto& [m, c] : terms_) {
            S t = scalar_from<S>(c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                t = t * int_power(x[i], m[i]);
            }
            total = total + t;
        }
        return total;
    }

    LaurentPolynomial derivative(int var) const {
        check_var(var);
        LaurentPolynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            Int e = m[static_cast<std::size_t>(var)];
            if (e == 0) continue;
            ExponentVector d = m;
            d[static_cast<std::size_t>(var)] = e - 1;
            r.add_term(d, c * Rational(e));
        }
        return r;
    }

    // Substitutes 1 for the given variable and drops its coordinate.
    LaurentPolynomial set_variable_to_one(int var) const {
        check_var(var);
        LaurentPolynomial r(nvars_ - 1);
        for (const auto& [m, c] : terms_)
            r.add_term(drop_coordinate(m, var), c);
        return r;
    }

    // Substitutes 0 for the given variable and drops its coordinate.  Terms
    // with a positive exponent vanish; a negative exponent is a pole.
    LaurentPolynomial set_variable_to_zero(int var) const {
        check_var(var);
        LaurentPolynomial r(nvars_ - 1);
        for (const auto& [m, c] : terms_) {
            Int e = m[static_cast<std::size_t>(var)];
            if (e < 0)
                throw EvaluationDomainError("zero substituted into a negative power");
            if (e > 0) continue;
            r.add_term(drop_coordinate(m, var), c);
        }
        return r;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check_exponent(const ExponentVector& m) const {
        if (static_cast<int>(m.size()) != nvars_)
            throw DimensionMismatchError("exponent vector has wrong dimension");
    }
    void check_same_space(const LaurentPolynomial& q) const {
        if (nvars_ != q.nvars_)
            throw DimensionMismatchError("polynomials live in different variable sets");
    }
    void check_var(int var) const {
        if (var < 0 || var >= nvars_)
            throw std::out_of_range("variable index out of range");
    }
    static ExponentVector drop_coordinate(const ExponentVector& m, int var) {
        ExponentVector d;
        d.reserve(m.size() - 1);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var) d.push_back(m[i]);
        return d;
    }

    int nvars_;
    std::map<ExponentVector, Rational> terms_;
};

}  // namespace evpos
