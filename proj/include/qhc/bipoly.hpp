#pragma once

#include "qhc/scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qhc {

struct Exponent {
    unsigned x = 0;
    unsigned y = 0;
    friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Print order: higher power of y first, then higher power of x.
struct TermOrder {
    bool operator()(const Exponent& a, const Exponent& b) const {
        if (a.y != b.y) return a.y > b.y;
        return a.x > b.x;
    }
};

/// Sparse polynomial in x, y. Zero coefficients are never stored.
class BiPoly {
public:
    using Terms = std::map<Exponent, Scalar, TermOrder>;

    explicit BiPoly(Field field = exact_field) : field_(field) {}

    static BiPoly constant(const Scalar& c) { return monomial(c, 0, 0); }
    static BiPoly monomial(const Scalar& c, unsigned i, unsigned j) {
        BiPoly p(c.field());
        p.add_term({i, j}, c);
        return p;
    }
    static BiPoly x(const Field& f = exact_field, unsigned power = 1) {
        return monomial(Scalar::one(f), power, 0);
    }
    static BiPoly y(const Field& f = exact_field, unsigned power = 1) {
        return monomial(Scalar::one(f), 0, power);
    }

    const Field& field() const { return field_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coeff(unsigned i, unsigned j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Scalar::zero(field_) : it->second;
    }

    void add_term(Exponent e, const Scalar& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    /// Same polynomial with coefficients moved into another field.
    BiPoly in(const Field& f) const {
        BiPoly r(f);
        for (const auto& [e, c] : terms_) r.add_term(e, c.in(f));
        return r;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
        return a;
    }
    BiPoly operator-() const { return BiPoly(field_) - *this; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r(a.field_.exact() ? b.field_ : a.field_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.x + eb.x, ea.y + eb.y}, ca * cb);
        return r;
    }
    friend BiPoly operator*(const Scalar& s, const BiPoly& p) {
        BiPoly r(p.field_);
        for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
        return r;
    }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    BiPoly pow(unsigned e) const {
        BiPoly result = constant(Scalar::one(field_));
        BiPoly base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// Coefficientwise equality (tolerant in float mode).
    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        BiPoly d = a - b;
        for (const auto& [e, c] : d.terms_) {
            Scalar ca = a.coeff(e.x, e.y);
            Scalar cb = b.coeff(e.x, e.y);
            if (!(ca == cb)) return false;
        }
        return true;
    }

private:
    Field field_;
    Terms terms_;
};

/// (ord_x P, ord_y P): the largest m, n with x^m and y^n dividing P.
inline std::pair<unsigned, unsigned> orders(const BiPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("orders: zero polynomial");
    unsigned m = ~0u, n = ~0u;
    for (const auto& [e, c] : p.terms()) {
        m = std::min(m, e.x);
        n = std::min(n, e.y);
    }
    return {m, n};
}

/// Divides by x^i y^j; every term must be divisible.
inline BiPoly divide_monomial(const BiPoly& p, unsigned i, unsigned j) {
    BiPoly r(p.field());
    for (const auto& [e, c] : p.terms()) {
        if (e.x < i || e.y < j) throw std::invalid_argument("divide_monomial: not divisible");
        r.add_term({e.x - i, e.y - j}, c);
    }
    return r;
}

/// P(y, x).
inline BiPoly swap_variables(const BiPoly& p) {
    BiPoly r(p.field());
    for (const auto& [e, c] : p.terms()) r.add_term({e.y, e.x}, c);
    return r;
}

/// P(x_expr, y_expr), fully expanded.
inline BiPoly substitute(const BiPoly& p, const BiPoly& x_expr, const BiPoly& y_expr) {
    Field f = p.field().exact() ? (x_expr.field().exact() ? y_expr.field() : x_expr.field()) : p.field();
    BiPoly result(f);
    if (p.is_zero()) return result;
    std::vector<BiPoly> xpow{BiPoly::constant(Scalar::one(f))};
    std::vector<BiPoly> ypow{BiPoly::constant(Scalar::one(f))};
    auto power = [](std::vector<BiPoly>& cache, const BiPoly& base, unsigned e) -> const BiPoly& {
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };
    for (const auto& [e, c] : p.terms())
        result += c * (power(xpow, x_expr, e.x) * power(ypow, y_expr, e.y));
    return result;
}

/// alpha with P = alpha * Q, if one exists. Two zero polynomials give alpha = 1.
inline std::optional<Scalar> scalar_proportional(const BiPoly& p, const BiPoly& q) {
    Field f = p.field().exact() ? q.field() : p.field();
    if (p.is_zero() && q.is_zero()) return Scalar::one(f);
    if (p.is_zero() || q.is_zero()) return std::nullopt;
    // Pivot on the largest coefficient of Q for floating stability.
    auto pivot = q.terms().begin();
    for (auto it = q.terms().begin(); it != q.terms().end(); ++it)
        if (it->second.abs() > pivot->second.abs()) pivot = it;
    Scalar alpha = p.coeff(pivot->first.x, pivot->first.y) / pivot->second;
    if (alpha.is_zero()) return std::nullopt;
    for (const auto& [e, c] : p.terms())
        if (!(c == alpha * q.coeff(e.x, e.y))) return std::nullopt;
    for (const auto& [e, c] : q.terms())
        if (!(p.coeff(e.x, e.y) == alpha * c)) return std::nullopt;
    return alpha;
}

}  // namespace qhc
