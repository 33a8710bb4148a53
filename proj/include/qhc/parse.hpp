#pragma once

// Text form of polynomials.
//
// Accepted input (whitespace is ignored):
//   poly    := sign? term (('+'|'-') term)*
//   term    := factor ('*'? factor)*
//   factor  := primary ('^' nat)?
//   primary := number | 'i' | 'x' | 'y' | '(' poly ')'
//   number  := nat ('/' nat)?                       exact mode
//            | decimal literal, optionally '/' nat    float mode
// This is a superset of the canonical coefficient syntax
// "(1/2+i)*x^2*y" produced by format_poly, so format -> parse is the identity.

#include "qhc/bipoly.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, Field field) : text_(text), field_(field) {}

    BiPoly parse() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "empty input");
        BiPoly result = poly();
        skip_ws();
        if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return result;
    }

private:
    static constexpr unsigned max_exponent = 100000;
    static constexpr int max_depth = 200;

    BiPoly poly() {
        if (++depth_ > max_depth) throw ParseError(pos_, "nesting too deep");
        BiPoly acc(field_);
        bool negative = false;
        skip_ws();
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        BiPoly t = term();
        acc = negative ? acc - t : acc + t;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            t = term();
            acc = c == '-' ? acc - t : acc + t;
        }
        --depth_;
        return acc;
    }

    BiPoly term() {
        BiPoly acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (starts_primary(c)) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    static bool starts_primary(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 'x' ||
               c == 'y' || c == '(';
    }

    BiPoly factor() {
        BiPoly base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError(at, "expected exponent after '^'");
            if (digits.size() > 6 || std::stoul(digits) > max_exponent)
                throw ParseError(at, "exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    BiPoly primary() {
        skip_ws();
        char c = peek();
        std::size_t at = pos_;
        if (c == 'x') { ++pos_; return BiPoly::x(field_); }
        if (c == 'y') { ++pos_; return BiPoly::y(field_); }
        if (c == 'i') { ++pos_; return BiPoly::constant(Scalar::imag_unit(field_)); }
        if (c == '(') {
            ++pos_;
            BiPoly inner = poly();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, at_end() ? "missing ')'" : "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return BiPoly::constant(number());
        if (at_end()) throw ParseError(at, "unexpected end of input");
        throw ParseError(at, std::string("unexpected '") + c + "'");
    }

    Scalar number() {
        std::size_t start = pos_;
        std::string whole = read_digits();
        bool decimal = false;
        if (peek() == '.') {
            decimal = true;
            ++pos_;
            whole += '.' + read_digits();
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t save = pos_;
            std::string expo(1, text_[pos_++]);
            if (peek() == '+' || peek() == '-') expo += text_[pos_++];
            std::string d = read_digits();
            if (d.empty()) {
                pos_ = save;
            } else {
                decimal = true;
                whole += expo + d;
            }
        }
        if (whole == "." ) throw ParseError(start, "malformed number");
        if (decimal && field_.exact())
            throw ParseError(start, "non-rational literal '" + whole + "' in exact mode");

        std::string denom;
        std::size_t save = pos_;
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            denom = read_digits();
            if (denom.empty()) throw ParseError(at, "expected denominator after '/'");
            if (denom.find_first_not_of('0') == std::string::npos) throw ParseError(at, "zero denominator");
        } else {
            pos_ = save;
        }

        if (field_.exact()) {
            mpq_class q(whole + (denom.empty() ? "" : "/" + denom), 10);
            q.canonicalize();
            return Scalar::exact(q);
        }
        double v = std::strtod(whole.c_str(), nullptr);
        if (!denom.empty()) v /= std::strtod(denom.c_str(), nullptr);
        return Scalar::approx(v, field_.tol);
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    std::string_view text_;
    Field field_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

inline std::string format_real_part(const Scalar& s) {
    if (s.is_exact()) return s.re().get_str();
    return format_double(s.to_complex().real());
}

inline bool is_integer_real(const Scalar& s) {
    if (s.is_exact()) return s.re().get_den() == 1;
    double v = s.to_complex().real();
    return std::floor(v) == v && std::abs(v) < 1e15;
}

inline bool is_negative_real(const Scalar& s) {
    if (s.is_exact()) return sgn(s.im()) == 0 && sgn(s.re()) < 0;
    auto v = s.to_complex();
    return v.imag() == 0.0 && v.real() < 0.0;
}

inline bool is_exactly_real(const Scalar& s) {
    return s.is_exact() ? sgn(s.im()) == 0 : s.to_complex().imag() == 0.0;
}

// Coefficient text for a nonnegative-real or nonreal scalar; empty means "1".
inline std::string coefficient_text(const Scalar& c, bool has_monomial) {
    if (is_exactly_real(c)) {
        bool unit = c.is_exact() ? c.re() == 1 : c.to_complex().real() == 1.0;
        if (unit && has_monomial) return "";
        std::string r = format_real_part(c);
        return is_integer_real(c) ? r : "(" + r + ")";
    }
    // "(re+imi)" with the real part always present.
    std::string re = format_real_part(c);
    std::string im;
    bool negative;
    if (c.is_exact()) {
        negative = sgn(c.im()) < 0;
        mpq_class a = abs(c.im());
        im = a == 1 ? "" : a.get_str();
    } else {
        double v = c.to_complex().imag();
        negative = v < 0.0;
        im = std::abs(v) == 1.0 ? "" : format_double(std::abs(v));
    }
    return "(" + re + (negative ? "-" : "+") + im + "i)";
}

inline std::string monomial_text(const Exponent& e) {
    std::string out;
    auto var = [&out](char v, unsigned p) {
        if (p == 0) return;
        if (!out.empty()) out += '*';
        out += v;
        if (p > 1) out += '^' + std::to_string(p);
    };
    var('x', e.x);
    var('y', e.y);
    return out;
}

}  // namespace detail

/// Parses text in the polynomial grammar above. Throws ParseError.
inline BiPoly parse_poly(std::string_view text, const Field& field = exact_field) {
    return detail::PolyParser(text, field).parse();
}

/// Canonical text: terms by descending power of y then of x, e.g. "y^2 - x^3".
inline std::string format_poly(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        bool neg = detail::is_negative_real(c);
        Scalar mag = neg ? -c : c;
        std::string mono = detail::monomial_text(e);
        std::string coef = detail::coefficient_text(mag, !mono.empty());
        std::string body = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
        if (first) out += neg ? "-" + body : body;
        else out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

}  // namespace qhc
