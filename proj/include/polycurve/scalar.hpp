#pragma once

// Coefficient domains for MultiPoly: exact rationals (GMP), Gaussian rationals
// over GMP, and a finite complex<double> mode for numerical work.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>

namespace polycurve {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// n/d in lowest terms. mpq_class(n, d) alone does not canonicalize.
inline Rational frac(long n, long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Element of Q(i), stored as two canonical GMP rationals.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussRational(const Rational& re) : re_(re) {}  // NOLINT
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return {-re_, -im_}; }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
        Rational n = o.norm();
        GaussRational t = *this * o.conj();
        re_ = t.re_ / n;
        im_ = t.im_ / n;
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussRational imaginary_unit() { return {Rational(0), Rational(1)}; }

/// Exact square root of a nonnegative rational, if it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return Rational(0);
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

/// Principal square root in Q(i) (real part > 0, or real part 0 and imag >= 0).
inline std::optional<GaussRational> exact_sqrt(const GaussRational& z) {
    if (z.is_zero()) return GaussRational();
    if (z.is_real() && sgn(z.real()) > 0) {
        auto r = exact_sqrt(z.real());
        if (r) return GaussRational(*r);
    }
    auto m = exact_sqrt(z.norm());
    if (!m) return std::nullopt;
    Rational u2 = (z.real() + *m) / 2;
    auto u = exact_sqrt(u2);
    if (!u) return std::nullopt;
    if (sgn(*u) == 0) {
        auto v = exact_sqrt((*m - z.real()) / 2);
        if (!v) return std::nullopt;
        return GaussRational(Rational(0), *v);
    }
    Rational v = z.imag() / (2 * *u);
    return GaussRational(*u, v);
}

// ---------------------------------------------------------------------------
// Scalar traits

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool has_imaginary_unit = false;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& s) { return sgn(s) == 0; }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational imag_unit() { throw std::domain_error("rational mode has no imaginary unit"); }
    static Complex to_complex(const Rational& s) { return {s.get_d(), 0.0}; }
    static std::optional<Rational> sqrt(const Rational& s) { return exact_sqrt(s); }
    static std::string name() { return "rational"; }
};

template <>
struct ScalarTraits<GaussRational> {
    static constexpr bool exact = true;
    static constexpr bool has_imaginary_unit = true;
    static GaussRational zero() { return {}; }
    static GaussRational one() { return GaussRational(1); }
    static bool is_zero(const GaussRational& s) { return s.is_zero(); }
    static GaussRational from_rational(const Rational& q) { return GaussRational(q); }
    static GaussRational imag_unit() { return imaginary_unit(); }
    static Complex to_complex(const GaussRational& s) { return s.to_complex(); }
    static std::optional<GaussRational> sqrt(const GaussRational& s) { return exact_sqrt(s); }
    static std::string name() { return "gaussian"; }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr bool has_imaginary_unit = true;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static bool is_zero(const Complex& s) { return s.real() == 0.0 && s.imag() == 0.0; }
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static Complex imag_unit() { return {0.0, 1.0}; }
    static Complex to_complex(const Complex& s) { return s; }
    static std::optional<Complex> sqrt(const Complex& s) { return std::sqrt(s); }
    static std::string name() { return "complex-float"; }
};

template <typename S>
concept PolyScalar = requires { ScalarTraits<S>::exact; };

template <typename S>
concept ExactScalar = PolyScalar<S> && ScalarTraits<S>::exact;

/// Rejects NaN/inf so float-mode polynomials only ever hold finite values.
inline Complex checked_finite(Complex c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::domain_error("non-finite complex coefficient");
    return c;
}

std::string to_string(const Rational& q);
std::string to_string(const GaussRational& z);
std::string to_string(const Complex& c);

}  // namespace polycurve
