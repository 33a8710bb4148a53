#pragma once

// Analytic equivalence of reduced quasi-homogeneous curves, with an explicit
// plane coordinate change T such that f_target o T = alpha * f_source.

#include "qhc/moduli.hpp"
#include "qhc/quasihom.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace qhc {

/// The principal p-th root of a radicand, kept symbolic.
struct Radical {
    Scalar radicand;
    unsigned index = 1;

    std::string to_string() const {
        return "(" + radicand.to_string() + ")^(1/" + std::to_string(index) + ")";
    }
    std::complex<double> principal() const {
        return std::pow(radicand.to_complex(), 1.0 / static_cast<double>(index));
    }
};

/// Some p-th root of a that is again a Gaussian rational, if any.
inline std::optional<Scalar> exact_root(const Scalar& a, unsigned p) {
    if (p == 1) return a;
    if (a.is_zero()) return a;
    // Writing a = w / L with w a Gaussian integer, any root in Q(i) times L is
    // a Gaussian integer.
    mpz_class denom;
    mpz_lcm(denom.get_mpz_t(), a.re().get_den_mpz_t(), a.im().get_den_mpz_t());
    std::complex<double> principal = std::pow(a.to_complex(), 1.0 / p);
    const double scale = denom.get_d();
    for (unsigned k = 0; k < p; ++k) {
        std::complex<double> z = principal * std::polar(1.0, 2 * std::numbers::pi * k / p);
        Scalar cand = Scalar::exact(mpq_class(mpz_class(std::floor(z.real() * scale + 0.5)), denom),
                                    mpq_class(mpz_class(std::floor(z.imag() * scale + 0.5)), denom));
        if (cand.pow(p) == a) return cand;
    }
    return std::nullopt;
}

struct Witness {
    BiPoly x_map;
    BiPoly y_map;
    /// When set, component `radical_component` of T is radical * (x_map or y_map).
    std::optional<Radical> radical;
    int radical_component = -1;
    /// alpha = alpha_coefficient * radical^alpha_radical_power
    Scalar alpha;
    unsigned alpha_radical_power = 0;
    GroupElement group_element;

    std::string component_text(int i) const {
        std::string base = format_poly(i == 0 ? x_map : y_map);
        if (radical && radical_component == i) return radical->to_string() + "*(" + base + ")";
        return base;
    }
    std::string plane_map_text() const {
        return "T(x,y) = (" + component_text(0) + ", " + component_text(1) + ")";
    }
    std::string alpha_text() const {
        std::string a = alpha.to_string();
        if (radical && alpha_radical_power > 0) {
            a = "(" + a + ")*(" + radical->radicand.to_string() + ")^(" + std::to_string(alpha_radical_power) +
                "/" + std::to_string(radical->index) + ")";
        }
        return a;
    }
};

namespace detail {

/// target(X, Y) grouped by powers of the radical: residue r -> polynomial R_r
/// with target o T = sum_r radical^r * R_r.
inline std::map<unsigned, BiPoly> pullback_by_residue(const Witness& w, const BiPoly& target) {
    std::map<unsigned, BiPoly> out;
    if (!w.radical) {
        out.emplace(0, substitute(target, w.x_map, w.y_map));
        return out;
    }
    const unsigned p = w.radical->index;
    const Scalar& a = w.radical->radicand;
    // Split the target by the residue mod p of the exponent of the radical component.
    std::map<unsigned, BiPoly> parts;
    for (const auto& [e, c] : target.terms()) {
        unsigned power = w.radical_component == 0 ? e.x : e.y;
        auto [it, inserted] = parts.try_emplace(power % p, target.field());
        it->second.add_term(e, c * a.pow(power / p));
    }
    for (const auto& [r, part] : parts) {
        BiPoly sub = substitute(part, w.x_map, w.y_map);
        if (!sub.is_zero()) out.emplace(r, std::move(sub));
    }
    return out;
}

}  // namespace detail

/// Checks target o T == alpha * source, exactly in exact mode.
inline bool verify_witness(const Witness& w, const BiPoly& source, const BiPoly& target) {
    auto parts = detail::pullback_by_residue(w, target);
    if (parts.size() != 1) return false;
    const auto& [residue, poly] = *parts.begin();
    if (residue != w.alpha_radical_power) return false;
    auto alpha = scalar_proportional(poly, source);
    return alpha && *alpha == w.alpha;
}

struct EquivalenceResult {
    std::optional<Witness> witness;
    std::string reason;  // first failing invariant when not equivalent
    CurveType source_type;
    CurveType target_type;

    bool equivalent() const { return witness.has_value(); }
};

namespace detail {

inline std::string group_name(Space s) {
    switch (s) {
        case Space::P1: return "PSL(2,C)";
        case Space::AFF: return "Aff(C)";
        case Space::STAR: return "GL(1,C)";
    }
    return "?";
}

// T in the normalized coordinates of both curves.
inline Witness normalized_witness(const GroupElement& g, const NormalForm& target, const Field& f) {
    Witness w;
    w.group_element = g;
    const BiPoly x = BiPoly::x(f);
    const BiPoly y = BiPoly::y(f);
    if (auto m = std::get_if<Mobius>(&g)) {
        w.x_map = m->d * x + m->c * y;
        w.y_map = m->b * x + m->a * y;
    } else if (auto af = std::get_if<Affine>(&g)) {
        w.x_map = x;
        w.y_map = af->a * y + BiPoly::monomial(af->b, target.q, 0);
    } else {
        const Scalar& a = std::get<Scaling>(g).a;
        w.x_map = x;
        if (!f.exact()) {
            w.y_map = Scalar::approx(Radical{a, target.p}.principal(), f.tol) * y;
        } else if (auto r = exact_root(a, target.p)) {
            w.y_map = *r * y;
        } else {
            w.y_map = y;
            w.radical = Radical{a, target.p};
            w.radical_component = 1;
        }
    }
    return w;
}

}  // namespace detail

/// Decides equivalence of two reduced curves. The witness maps the target
/// onto the source: target o T = alpha * source.
inline EquivalenceResult decide_equivalence(const NormalForm& source, const NormalForm& target) {
    EquivalenceResult res;
    res.source_type = classify_type(source);
    res.target_type = classify_type(target);
    const CurveType& ta = res.source_type;
    const CurveType& tb = res.target_type;
    if (ta.kind != tb.kind || ta.p != tb.p || ta.q != tb.q || ta.n != tb.n) {
        res.reason = "type " + ta.triple() + " ≠ " + tb.triple();
        return res;
    }
    if (ta.m_parity != tb.m_parity) {
        res.reason = "parity m " + std::to_string(*ta.m_parity) + " ≠ " + std::to_string(*tb.m_parity);
        return res;
    }
    if (ta.k_parity != tb.k_parity) {
        res.reason = "parity k " + std::to_string(*ta.k_parity) + " ≠ " + std::to_string(*tb.k_parity);
        return res;
    }
    auto g = configurations_equivalent(ta.configuration, tb.configuration);
    if (!g) {
        res.reason = "configuration " + ta.configuration.to_string() + " is not " +
                     detail::group_name(ta.configuration.space()) + "-equivalent to " +
                     tb.configuration.to_string();
        return res;
    }

    Field f = source.field().exact() ? target.field() : source.field();
    Witness w = detail::normalized_witness(*g, target, f);
    // Undo the coordinate swaps: T_original = S_target o T o S_source.
    if (source.swapped) {
        w.x_map = swap_variables(w.x_map);
        w.y_map = swap_variables(w.y_map);
    }
    if (target.swapped) {
        std::swap(w.x_map, w.y_map);
        if (w.radical) w.radical_component = 1 - w.radical_component;
    }

    const BiPoly fa = expand(source);
    const BiPoly fb = expand(target);
    auto parts = detail::pullback_by_residue(w, fb);
    std::optional<Scalar> alpha;
    if (parts.size() == 1) {
        w.alpha_radical_power = parts.begin()->first;
        alpha = scalar_proportional(parts.begin()->second, fa);
    }
    if (!alpha) throw ConsistencyError("witness pullback identity failed for " + w.plane_map_text());
    w.alpha = *alpha;
    if (!verify_witness(w, fa, fb)) throw ConsistencyError("witness verification failed");
    res.witness = std::move(w);
    return res;
}

inline std::optional<Witness> curves_equivalent(const NormalForm& source, const NormalForm& target) {
    return decide_equivalence(source, target).witness;
}

}  // namespace qhc
