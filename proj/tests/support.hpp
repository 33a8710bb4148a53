#pragma once

// Seeded generators and independent oracles shared by the unit tests and the
// acceptance binary.

#include "qhc/qhc.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace qhc::testkit {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline mpq_class random_rational(Rng& rng, long num = 9, long den = 4) {
    mpq_class r(uniform(rng, -num, num), uniform(rng, 1, den));
    r.canonicalize();
    return r;
}

/// Gaussian rational, integral about half the time, real about half the time.
inline Scalar random_gaussian(Rng& rng) {
    long den = uniform(rng, 0, 1) ? 1 : 4;
    mpq_class re = random_rational(rng, 9, den);
    mpq_class im = uniform(rng, 0, 1) ? mpq_class(0) : random_rational(rng, 9, den);
    return Scalar::exact(re, im);
}

inline Scalar random_nonzero(Rng& rng) {
    for (;;) {
        Scalar s = random_gaussian(rng);
        if (!s.is_zero()) return s;
    }
}

inline std::vector<Scalar> distinct_nonzero(Rng& rng, std::size_t n) {
    std::vector<Scalar> out;
    while (out.size() < n) {
        Scalar s = random_nonzero(rng);
        bool seen = false;
        for (const auto& t : out) seen = seen || t == s;
        if (!seen) out.push_back(s);
    }
    return out;
}

inline BiPoly random_poly(Rng& rng, unsigned max_terms = 6, unsigned max_degree = 6) {
    BiPoly p;
    long terms = uniform(rng, 0, max_terms);
    for (long t = 0; t < terms; ++t)
        p.add_term({static_cast<unsigned>(uniform(rng, 0, max_degree)), static_cast<unsigned>(uniform(rng, 0, max_degree))},
                   random_gaussian(rng));
    return p;
}

/// 1 <= p < q <= max_q with gcd 1.
inline std::pair<unsigned, unsigned> random_coprime(Rng& rng, unsigned max_q) {
    for (;;) {
        unsigned q = static_cast<unsigned>(uniform(rng, 2, max_q));
        unsigned p = static_cast<unsigned>(uniform(rng, 1, q - 1));
        if (std::gcd(p, q) == 1) return {p, q};
    }
}

inline std::vector<std::pair<unsigned, unsigned>> coprime_pairs(unsigned max_q) {
    std::vector<std::pair<unsigned, unsigned>> out{{1, 1}};
    for (unsigned q = 2; q <= max_q; ++q)
        for (unsigned p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) out.push_back({p, q});
    return out;
}

inline std::vector<Scalar> sorted(std::vector<Scalar> v) {
    std::sort(v.begin(), v.end(), less_re_im);
    return v;
}

/// Reduced normal form with the given weights and n distinct lambdas.
inline NormalForm make_normal_form(Rng& rng, unsigned p, unsigned q, std::size_t n, unsigned m_axis, unsigned n_axis) {
    NormalForm nf;
    nf.mu = random_nonzero(rng);
    nf.p = p;
    nf.q = q;
    nf.m = m_axis;
    nf.n = n_axis;
    nf.lambdas = sorted(distinct_nonzero(rng, n));
    return nf;
}

// Cross-ratio (a, b; c, d) = (a-c)(b-d) / ((a-d)(b-c)) with infinity dropped from
// the factors it appears in.
inline Scalar cross_ratio(const PointP1& a, const PointP1& b, const PointP1& c, const PointP1& d) {
    auto diff = [](const PointP1& u, const PointP1& v) -> std::optional<Scalar> {
        if (u.is_infinity() || v.is_infinity()) return std::nullopt;
        return u.value() - v.value();
    };
    Field f = exact_field;
    for (const auto* p : {&a, &b, &c, &d})
        if (!p->is_infinity()) f = p->value().field();
    Scalar num = Scalar::one(f), den = Scalar::one(f);
    for (auto v : {diff(a, c), diff(b, d)})
        if (v) num = num * *v;
    for (auto v : {diff(a, d), diff(b, c)})
        if (v) den = den * *v;
    return num / den;
}

/// Klein j-function of four points: equal iff projectively equivalent.
inline Scalar j_invariant(const std::vector<PointP1>& pts) {
    Scalar l = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    Scalar one = Scalar::one(l.field());
    Scalar t = l * l - l + one;
    return t * t * t / (l * l * (l - one) * (l - one));
}

/// Triangle shape (c-a)/(b-a) up to relabelling, for three affine points.
inline std::vector<Scalar> affine_shape_orbit(const std::vector<Scalar>& pts) {
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) {
                std::size_t k = 3 - i - j;
                out.push_back((pts[k] - pts[i]) / (pts[j] - pts[i]));
            }
    return out;
}

inline bool contains(const std::vector<Scalar>& v, const Scalar& s) {
    for (const auto& t : v)
        if (t == s) return true;
    return false;
}

/// Random exact group elements.
inline Mobius random_mobius(Rng& rng) {
    for (;;) {
        Mobius m{random_gaussian(rng), random_gaussian(rng), random_gaussian(rng), random_gaussian(rng)};
        if (!(m.a * m.d - m.b * m.c).is_zero()) return m;
    }
}

inline Affine random_affine(Rng& rng) { return {random_nonzero(rng), random_gaussian(rng)}; }

inline Scaling random_scaling(Rng& rng) { return {random_nonzero(rng)}; }

}  // namespace qhc::testkit
