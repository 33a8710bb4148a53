#pragma once

// Quasi-homogeneous normal form
//     P = mu * x^m * y^n * prod_l (y^p - lambda_l * x^q),   gcd(p,q) = 1, p <= q,
// and the curve type (p,q,n) with its folded point configuration.

#include "qhc/bipoly.hpp"
#include "qhc/configuration.hpp"
#include "qhc/errors.hpp"
#include "qhc/parse.hpp"
#include "qhc/univariate.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qhc {

/// Coprime weights: every term x^i y^j satisfies a*i + b*j = d.
struct Weights {
    unsigned a = 1;
    unsigned b = 1;
    unsigned d = 0;
    friend bool operator==(const Weights&, const Weights&) = default;
};

/// Weights of a quasi-homogeneous polynomial, or nullopt if none exist.
/// A monomial gets the convention (1, 1, degree).
inline std::optional<Weights> detect_weights(const BiPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("detect_weights: zero polynomial");
    const auto& terms = p.terms();
    const Exponent e0 = terms.begin()->first;
    const Exponent* e1 = nullptr;
    for (const auto& [e, c] : terms)
        if (!(e == e0)) {
            e1 = &e;
            break;
        }
    if (!e1) return Weights{1, 1, e0.x + e0.y};

    // a * (x0 - x1) = b * (y1 - y0) with a, b > 0.
    long long dx = static_cast<long long>(e0.x) - e1->x;
    long long dy = static_cast<long long>(e1->y) - e0.y;
    if (dx == 0 || dy == 0 || (dx > 0) != (dy > 0)) return std::nullopt;
    dx = std::llabs(dx);
    dy = std::llabs(dy);
    long long g = std::gcd(dx, dy);
    Weights w{static_cast<unsigned>(dy / g), static_cast<unsigned>(dx / g), 0};
    w.d = w.a * e0.x + w.b * e0.y;
    for (const auto& [e, c] : terms)
        if (w.a * e.x + w.b * e.y != w.d) return std::nullopt;
    return w;
}

inline Weights require_weights(const BiPoly& p) {
    if (p.is_zero()) throw NotQuasiHomogeneous("the zero polynomial does not define a curve");
    auto w = detect_weights(p);
    if (!w) throw NotQuasiHomogeneous("polynomial " + format_poly(p) + " is not quasi-homogeneous");
    return *w;
}

struct MonomialSplit {
    unsigned m = 0;
    unsigned n = 0;
    BiPoly commode;  // ord_x = ord_y = 0
};

/// P = x^m y^n P0 with P0 commode.
inline MonomialSplit decompose_monomial_part(const BiPoly& p) {
    require_weights(p);
    auto [m, n] = orders(p);
    return {m, n, divide_monomial(p, m, n)};
}

struct CommodeFactorization {
    Scalar mu;
    unsigned p = 1;
    unsigned q = 1;
    std::vector<Scalar> lambdas;  // sorted by (re, im)
};

/// The polynomial g(z) = sum_j c_j z^j with c_j the coefficient of x^{q(k-j)} y^{pj}.
inline uni::Poly commode_root_polynomial(const BiPoly& p0, unsigned p, unsigned q, unsigned k) {
    uni::Poly g;
    for (unsigned j = 0; j <= k; ++j) g.push_back(p0.coeff(q * (k - j), p * j));
    return g;
}

inline std::string format_univariate(const uni::Poly& g, const Field& f) {
    BiPoly as_x(f);
    for (std::size_t j = 0; j < g.size(); ++j) as_x.add_term({0, static_cast<unsigned>(j)}, g[j]);
    std::string s = format_poly(as_x);
    for (auto& ch : s)
        if (ch == 'y') ch = 'z';
    return s;
}

/// P0 = mu * prod (y^p - lambda x^q) for a commode nonconstant P0.
inline CommodeFactorization factor_commode(const BiPoly& p0) {
    Weights w = require_weights(p0);
    auto [ox, oy] = orders(p0);
    if (ox != 0 || oy != 0) throw AnalysisError("factor_commode: polynomial " + format_poly(p0) + " is not commode");
    if (w.d == 0) throw AnalysisError("factor_commode: constant polynomial");
    CommodeFactorization out;
    out.p = w.a;
    out.q = w.b;
    if (w.d % (w.a * w.b) != 0) throw AnalysisError("factor_commode: degree not divisible by p*q");
    unsigned k = w.d / (w.a * w.b);
    uni::Poly g = commode_root_polynomial(p0, out.p, out.q, k);
    out.mu = g.back();
    if (p0.field().exact()) {
        auto roots = uni::exact_roots(g);
        if (!roots) throw NeedsFloatMode(format_univariate(g, p0.field()));
        out.lambdas = *roots;
    } else {
        out.lambdas = uni::float_roots(g, p0.field().tol);
    }
    return out;
}

struct NormalForm {
    Scalar mu = 1;
    unsigned m = 0;
    unsigned n = 0;
    unsigned p = 1;
    unsigned q = 1;
    std::vector<Scalar> lambdas;
    bool swapped = false;  // x and y were exchanged to get p <= q

    Field field() const { return mu.field(); }
};

/// mu x^m y^n prod (y^p - lambda x^q) in the normalized coordinates.
inline BiPoly expand_normalized(const NormalForm& nf) {
    Field f = nf.field();
    BiPoly r = BiPoly::monomial(nf.mu, nf.m, nf.n);
    for (const auto& l : nf.lambdas)
        r *= BiPoly::y(f, nf.p) - BiPoly::monomial(l, nf.q, 0);
    return r;
}

/// The polynomial in the caller's original coordinates.
inline BiPoly expand(const NormalForm& nf) {
    BiPoly r = expand_normalized(nf);
    return nf.swapped ? swap_variables(r) : r;
}

inline NormalForm normal_form(const BiPoly& poly) {
    auto split = decompose_monomial_part(poly);
    NormalForm nf;
    if (split.commode.size() == 1) {  // unit cofactor: monomial curve
        nf.mu = split.commode.terms().begin()->second;
        nf.m = split.m;
        nf.n = split.n;
        return nf;
    }
    Weights w = require_weights(split.commode);
    if (w.a > w.b) {
        nf = normal_form(swap_variables(poly));
        nf.swapped = true;
        return nf;
    }
    auto fac = factor_commode(split.commode);
    nf.mu = fac.mu;
    nf.m = split.m;
    nf.n = split.n;
    nf.p = fac.p;
    nf.q = fac.q;
    nf.lambdas = std::move(fac.lambdas);
    return nf;
}

inline bool check_reduced(const NormalForm& nf) {
    if (nf.m > 1 || nf.n > 1) return false;
    for (std::size_t i = 0; i < nf.lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < nf.lambdas.size(); ++j)
            if (nf.lambdas[i] == nf.lambdas[j]) return false;
    return true;
}

struct Reduction {
    NormalForm nf;
    std::vector<std::string> dropped;  // human-readable notes, empty if already reduced
};

/// Squarefree part: axis multiplicities clamp to 1, repeated lambdas collapse.
inline Reduction reduce(const NormalForm& nf) {
    Reduction r{nf, {}};
    // Axis names in the caller's coordinates.
    const char* first_axis = nf.swapped ? "y" : "x";
    const char* second_axis = nf.swapped ? "x" : "y";
    if (nf.m > 1) {
        r.dropped.push_back(std::string(first_axis) + " multiplicity " + std::to_string(nf.m) + " -> 1");
        r.nf.m = 1;
    }
    if (nf.n > 1) {
        r.dropped.push_back(std::string(second_axis) + " multiplicity " + std::to_string(nf.n) + " -> 1");
        r.nf.n = 1;
    }
    r.nf.lambdas.clear();
    for (const auto& l : nf.lambdas) {
        bool seen = false;
        for (const auto& kept : r.nf.lambdas) seen = seen || kept == l;
        if (seen) r.dropped.push_back("repeated factor with lambda = " + l.to_string());
        else r.nf.lambdas.push_back(l);
    }
    return r;
}

enum class TypeKind { homogeneous, one_q, p_q };  // (1,1,n), (1,q,n), (p,q,n)

struct CurveType {
    TypeKind kind = TypeKind::homogeneous;
    unsigned p = 1;
    unsigned q = 1;
    unsigned n = 0;
    std::optional<unsigned> m_parity;
    std::optional<unsigned> k_parity;
    Configuration configuration;

    std::string triple() const {
        return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(n) + ")";
    }
};

/// Type of a reduced curve. The axes fold into the configuration: in the
/// homogeneous case x = 0 is the point at infinity and y = 0 the point 0; in
/// the (1,q) case y = 0 is the point 0.
inline CurveType classify_type(const NormalForm& nf) {
    if (!check_reduced(nf)) throw NotReduced("curve is not reduced (repeated factor); use --reduce");
    CurveType t;
    t.p = nf.p;
    t.q = nf.q;
    std::vector<PointP1> pts(nf.lambdas.begin(), nf.lambdas.end());
    Field f = nf.field();
    if (nf.p == 1 && nf.q == 1) {
        t.kind = TypeKind::homogeneous;
        if (nf.m == 1) pts.push_back(PointP1::infinity());
        if (nf.n == 1) pts.emplace_back(Scalar::zero(f));
        t.configuration = Configuration(Space::P1, pts);
    } else if (nf.p == 1) {
        t.kind = TypeKind::one_q;
        t.m_parity = nf.m;
        if (nf.n == 1) pts.emplace_back(Scalar::zero(f));
        t.configuration = Configuration(Space::AFF, pts);
    } else {
        t.kind = TypeKind::p_q;
        t.m_parity = nf.m;
        t.k_parity = nf.n;
        t.configuration = Configuration(Space::STAR, pts);
    }
    t.n = static_cast<unsigned>(t.configuration.size());
    return t;
}

}  // namespace qhc
