#pragma once

// Dense univariate polynomials over Scalar and their roots. Used to split
// g(z) in the commode factorization and to locate branch points on
// exceptional lines.

#include "qhc/errors.hpp"
#include "qhc/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qhc {

class RootSolverError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

namespace uni {

/// Coefficients from the constant term upward; no trailing zeros.
using Poly = std::vector<Scalar>;

inline Poly trimmed(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

inline int degree(const Poly& p) { return static_cast<int>(trimmed(p).size()) - 1; }

inline Scalar eval(const Poly& p, const Scalar& z) {
    Scalar acc = p.empty() ? Scalar() : Scalar::zero(p.back().field());
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Scalar(static_cast<long>(i)).in(p[i].field()) * p[i]);
    return trimmed(d);
}

/// Quotient and remainder of a / b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b_in) {
    Poly b = trimmed(b_in);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    a = trimmed(a);
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1, Scalar::zero(a.back().field()));
    const Scalar& lead = b.back();
    for (std::size_t k = a.size() - 1; k + 1 >= b.size(); --k) {
        Scalar coef = a[k] / lead;
        std::size_t shift = k + 1 - b.size();
        q[shift] = coef;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= coef * b[j];
        a[k] = Scalar::zero(a[k].field());
        if (shift == 0) break;
    }
    return {trimmed(q), trimmed(a)};
}

inline Poly monic(Poly p) {
    p = trimmed(p);
    if (p.empty()) return p;
    Scalar lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline Poly gcd(Poly a, Poly b) {
    a = trimmed(a);
    b = trimmed(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

using cplx = std::complex<long double>;

inline std::vector<cplx> to_complex(const Poly& p) {
    std::vector<cplx> c;
    c.reserve(p.size());
    for (const auto& s : p) {
        if (s.is_exact())
            c.emplace_back(static_cast<long double>(s.re().get_d()), static_cast<long double>(s.im().get_d()));
        else
            c.emplace_back(s.to_complex());
    }
    return c;
}

inline std::pair<cplx, cplx> eval_with_derivative(const std::vector<cplx>& c, cplx z) {
    cplx v = 0, d = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    return {v, d};
}

/// All complex roots by Aberth-Ehrlich simultaneous iteration, then Newton polishing.
inline std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs, int max_iter = 2000) {
    std::size_t n = coeffs.size() - 1;
    if (coeffs.size() < 2) return {};
    const cplx lead = coeffs.back();
    long double bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(coeffs[i] / lead));
    bound = 1 + bound;
    // Start on a circle of radius ~ geometric mean of |roots|, offset from the axes.
    long double radius = std::pow(std::abs(coeffs[0] / lead), 1.0L / static_cast<long double>(n));
    if (!(radius > 0) || !std::isfinite(static_cast<double>(radius))) radius = 1;
    radius = std::min(radius, bound);
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double angle = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
        z[k] = std::polar(radius, angle);
    }
    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        converged = true;
        for (std::size_t k = 0; k < n; ++k) {
            auto [v, d] = eval_with_derivative(coeffs, z[k]);
            if (v == cplx(0)) continue;
            cplx ratio = v / d;
            cplx sum = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            cplx step = ratio / (1.0L - ratio * sum);
            if (!std::isfinite(static_cast<double>(std::abs(step)))) step = ratio;
            z[k] -= step;
            if (std::abs(step) > 1e-17L * std::max(1.0L, std::abs(z[k]))) converged = false;
        }
    }
    if (!converged) {
        // Accept if the residuals are already at rounding level.
        for (const auto& r : z) {
            auto [v, d] = eval_with_derivative(coeffs, r);
            long double scale = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) scale = scale * std::abs(r) + std::abs(*it);
            if (std::abs(v) > 1e-12L * scale)
                throw RootSolverError("root solver did not converge");
        }
    }
    for (auto& r : z) {
        for (int i = 0; i < 5; ++i) {
            auto [v, d] = eval_with_derivative(coeffs, r);
            if (d == cplx(0)) break;
            cplx step = v / d;
            if (!std::isfinite(static_cast<double>(std::abs(step)))) break;
            r -= step;
        }
    }
    return z;
}

namespace detail {

// Gaussian integers as (re, im) pairs.
struct GaussInt {
    mpz_class re, im;
};

// c * poly with Gaussian-integer coefficients whose real and imaginary parts
// have no common integer factor.
inline std::vector<GaussInt> primitive_integral(const Poly& p) {
    mpz_class denom = 1;
    for (const auto& c : p) {
        mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.im().get_den_mpz_t());
    }
    std::vector<GaussInt> out;
    mpz_class content = 0;
    for (const auto& c : p) {
        mpq_class re = c.re() * denom, im = c.im() * denom;
        out.push_back({re.get_num(), im.get_num()});
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), re.get_num_mpz_t());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), im.get_num_mpz_t());
    }
    for (auto& c : out) {
        mpz_divexact(c.re.get_mpz_t(), c.re.get_mpz_t(), content.get_mpz_t());
        mpz_divexact(c.im.get_mpz_t(), c.im.get_mpz_t(), content.get_mpz_t());
    }
    return out;
}

struct BigComplex {
    mpf_class re, im;
};

// Newton's method in multiprecision from a double-precision start.
inline BigComplex newton_polish(const std::vector<GaussInt>& h, const cplx& start, mp_bitcnt_t prec) {
    std::vector<BigComplex> c;
    for (const auto& g : h) c.push_back({mpf_class(g.re, prec), mpf_class(g.im, prec)});
    BigComplex z{mpf_class(static_cast<double>(start.real()), prec), mpf_class(static_cast<double>(start.imag()), prec)};
    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec - 16);
    for (int iter = 0; iter < 200; ++iter) {
        mpf_class vr(0, prec), vi(0, prec), dr(0, prec), di(0, prec), t(0, prec);
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            // d = d*z + v; v = v*z + c
            t = dr * z.re - di * z.im + vr;
            di = dr * z.im + di * z.re + vi;
            dr = t;
            t = vr * z.re - vi * z.im + it->re;
            vi = vr * z.im + vi * z.re + it->im;
            vr = t;
        }
        mpf_class norm = dr * dr + di * di;
        if (norm == 0) break;
        mpf_class sr = (vr * dr + vi * di) / norm;
        mpf_class si = (vi * dr - vr * di) / norm;
        z.re -= sr;
        z.im -= si;
        mpf_class size = abs(z.re) + abs(z.im) + 1;
        if (abs(sr) + abs(si) <= eps * size) break;
    }
    return z;
}

inline mpz_class round_half_up(const mpf_class& v) {
    mpf_class shifted = v + 0.5;
    mpf_class f = floor(shifted);
    return mpz_class(f);
}

}  // namespace detail

/// Roots with multiplicity when the polynomial splits into linear factors
/// over the Gaussian rationals; nullopt otherwise. Input must be exact.
inline std::optional<std::vector<Scalar>> exact_roots(const Poly& g_in) {
    Poly g = monic(g_in);
    if (g.empty()) throw std::invalid_argument("exact_roots: zero polynomial");
    if (g.size() == 1) return std::vector<Scalar>{};
    Poly sqfree = monic(divmod(g, gcd(g, derivative(g))).first);

    // With h primitive over Z[i] and leading coefficient L, every root r in
    // Q(i) has L*r integral over Z[i], hence in Z[i].
    auto h = detail::primitive_integral(sqfree);
    const detail::GaussInt lead = h.back();
    std::size_t bits = 0;
    for (const auto& c : h)
        bits = std::max({bits, mpz_sizeinbase(c.re.get_mpz_t(), 2), mpz_sizeinbase(c.im.get_mpz_t(), 2)});
    const mp_bitcnt_t prec = 128 + 4 * bits;
    std::vector<cplx> approx;
    try {
        approx = aberth_roots(to_complex(sqfree));
    } catch (const RootSolverError&) {
        return std::nullopt;
    }
    const mpq_class lead_norm = mpq_class(lead.re * lead.re + lead.im * lead.im);
    std::vector<Scalar> distinct;
    for (const auto& z0 : approx) {
        detail::BigComplex z = detail::newton_polish(h, z0, prec);
        mpz_class wr = detail::round_half_up(z.re * lead.re - z.im * lead.im);
        mpz_class wi = detail::round_half_up(z.re * lead.im + z.im * lead.re);
        // r = w / L = w * conj(L) / |L|^2
        Scalar c = Scalar::exact(mpq_class(wr * lead.re + wi * lead.im) / lead_norm,
                                 mpq_class(wi * lead.re - wr * lead.im) / lead_norm);
        if (!eval(sqfree, c).is_zero()) return std::nullopt;
        if (std::find(distinct.begin(), distinct.end(), c) != distinct.end()) return std::nullopt;
        distinct.push_back(c);
    }
    std::vector<Scalar> roots;
    for (const auto& c : distinct) {
        Poly lin{-c, Scalar(1)};
        for (;;) {
            auto [q, r] = divmod(g, lin);
            if (!r.empty()) break;
            g = q;
            roots.push_back(c);
        }
    }
    if (g.size() != 1) return std::nullopt;
    std::sort(roots.begin(), roots.end(), less_re_im);
    return roots;
}

/// Numerical roots with a residual check; throws RootSolverError.
inline std::vector<Scalar> float_roots(const Poly& g_in, double tol) {
    Poly g = trimmed(g_in);
    if (g.empty()) throw std::invalid_argument("float_roots: zero polynomial");
    auto coeffs = to_complex(g);
    auto z = aberth_roots(coeffs);
    std::vector<Scalar> roots;
    for (const auto& r : z) {
        auto [v, d] = eval_with_derivative(coeffs, r);
        long double scale = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) scale = scale * std::abs(r) + std::abs(*it);
        if (std::abs(v) > static_cast<long double>(tol) * scale)
            throw RootSolverError("root solver residual check failed");
        // Drop round-off in a component far below the tolerance.
        const long double noise = 1e-3L * tol * std::max(1.0L, std::abs(r));
        double re = std::abs(r.real()) < noise ? 0.0 : static_cast<double>(r.real());
        double im = std::abs(r.imag()) < noise ? 0.0 : static_cast<double>(r.imag());
        roots.push_back(Scalar::approx({re, im}, tol));
    }
    std::sort(roots.begin(), roots.end(), less_re_im);
    return roots;
}

}  // namespace uni
}  // namespace qhc
