#pragma once

// Text form of polynomials shared by every CLI subcommand.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | name | 'i' | '(' expr ')'
//
// Implicit multiplication is rejected. The token `i` is the imaginary unit in
// Gaussian and complex-float modes unless `i` is itself a declared variable.
// Complex-float mode also accepts decimal literals such as 0.25 or 1e-3.

#include "polycurve/multipoly.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polycurve {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

template <PolyScalar S>
class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    MultiPoly<S> run() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        MultiPoly<S> p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(unexpected(), pos_);
        return p;
    }

private:
    using Traits = ScalarTraits<S>;

    MultiPoly<S> expr() {
        MultiPoly<S> acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly<S> term() {
        MultiPoly<S> acc = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc = acc * unary();
                continue;
            }
            if (pos_ < text_.size() && starts_operand(text_[pos_]))
                throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
            return acc;
        }
    }

    MultiPoly<S> unary() {
        skip_ws();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly<S> power() {
        MultiPoly<S> base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected non-negative integer exponent", at);
            const std::string digits = take_digits();
            if (digits.size() > 6) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    MultiPoly<S> atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            MultiPoly<S> inner = expr();
            skip_ws();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return name();
        throw ParseError(unexpected(), pos_);
    }

    MultiPoly<S> number() {
        const std::size_t at = pos_;
        if constexpr (Traits::exact) {
            if (text_[pos_] == '.') throw ParseError("decimal literals need --mode float", at);
            const std::string num = take_digits();
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
                throw ParseError("decimal literals need --mode float", pos_);
            Rational q{mpz_class(num)};
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::size_t dat = pos_;
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw ParseError("expected integer denominator", dat);
                mpz_class den(take_digits());
                if (den == 0) throw ParseError("zero denominator", dat);
                q = Rational(mpz_class(num), den);
                q.canonicalize();
            }
            return MultiPoly<S>::constant(vars_, Traits::from_rational(q));
        } else {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            const std::string buf(begin, text_.size() - pos_);
            double v = std::strtod(buf.c_str(), &end);
            const std::size_t used = static_cast<std::size_t>(end - buf.c_str());
            if (used == 0) throw ParseError("malformed number", at);
            pos_ += used;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::string rest(text_.data() + pos_, text_.size() - pos_);
                char* dend = nullptr;
                const double d = std::strtod(rest.c_str(), &dend);
                const std::size_t dused = static_cast<std::size_t>(dend - rest.c_str());
                if (dused == 0) throw ParseError("expected denominator", pos_);
                if (d == 0.0) throw ParseError("zero denominator", pos_);
                pos_ += dused;
                v /= d;
            }
            return MultiPoly<S>::constant(vars_, checked_finite(Complex(v, 0.0)));
        }
    }

    MultiPoly<S> name() {
        const std::size_t at = pos_;
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            id.push_back(text_[pos_++]);
        for (const auto& v : vars_)
            if (v == id) return MultiPoly<S>::variable(vars_, id);
        if (id == "i") {
            if constexpr (Traits::has_imaginary_unit) {
                return MultiPoly<S>::constant(vars_, Traits::imag_unit());
            } else {
                throw ParseError("imaginary unit 'i' needs Gaussian or float mode", at);
            }
        }
        throw ParseError("unknown variable '" + id + "'", at);
    }

    std::string take_digits() {
        std::string d;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d.push_back(text_[pos_++]);
        return d;
    }

    static bool starts_operand(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '.';
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string unexpected() const {
        if (pos_ >= text_.size()) return "unexpected end of input";
        return std::string("unexpected character '") + text_[pos_] + "'";
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

// Coefficient text that can be followed by "*monomial" without ambiguity.
std::string coefficient_factor(const Rational& c);
std::string coefficient_factor(const GaussRational& c);
std::string coefficient_factor(const Complex& c);

}  // namespace detail

template <PolyScalar S>
MultiPoly<S> parse_poly(std::string_view text, const std::vector<std::string>& vars) {
    for (const auto& v : vars)
        if (v.empty() || std::isdigit(static_cast<unsigned char>(v[0])))
            throw std::invalid_argument("invalid variable name '" + v + "'");
    return detail::PolyParser<S>(text, vars).run();
}

/// Canonical printing: grlex-descending terms, `*` between factors.
template <PolyScalar S>
std::string to_string(const MultiPoly<S>& p) {
    using Traits = ScalarTraits<S>;
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += p.vars()[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        std::string t;
        if (mono.empty()) {
            t = to_string(c);
        } else if (c == Traits::one()) {
            t = mono;
        } else if (c == -Traits::one()) {
            t = "-" + mono;
        } else {
            t = detail::coefficient_factor(c) + "*" + mono;
        }
        if (first) {
            out = t;
            first = false;
        } else if (t.front() == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

}  // namespace polycurve
