#include "polycurve/poly_text.hpp"
#include "polycurve/scalar.hpp"

#include <cstdio>

namespace polycurve {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

std::string imag_part(const Rational& b) {
    if (b == 1) return "i";
    if (b == -1) return "-i";
    return b.get_str() + "*i";
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(const GaussRational& z) {
    if (z.is_real()) return z.real().get_str();
    if (sgn(z.real()) == 0) return imag_part(z.imag());
    std::string s = "(" + z.real().get_str();
    s += sgn(z.imag()) < 0 ? "-" : "+";
    s += imag_part(abs(z.imag()));
    return s + ")";
}

std::string to_string(const Complex& c) {
    if (c.imag() == 0.0) return fmt_double(c.real());
    std::string im = fmt_double(std::abs(c.imag())) + "*i";
    if (c.real() == 0.0) return (c.imag() < 0 ? "-" : "") + im;
    return "(" + fmt_double(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

namespace detail {

std::string coefficient_factor(const Rational& c) { return c.get_str(); }

std::string coefficient_factor(const GaussRational& c) { return to_string(c); }

std::string coefficient_factor(const Complex& c) { return to_string(c); }

}  // namespace detail
}  // namespace polycurve
