#pragma once

// Equivalence of point configurations under PSL(2,C) on P1, Aff(C) on C and
// GL(1,C) on C*, by exhaustive search over ordered tuples, plus canonical keys.

#include "qhc/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace qhc {

/// z -> (az + b) / (cz + d), stored up to a common scalar.
struct Mobius {
    Scalar a, b, c, d;
};
/// z -> az + b
struct Affine {
    Scalar a, b;
};
/// z -> az
struct Scaling {
    Scalar a;
};

using GroupElement = std::variant<Mobius, Affine, Scaling>;

inline PointP1 apply(const Mobius& g, const PointP1& z) {
    if (z.is_infinity()) {
        if (g.c.is_zero()) return PointP1::infinity();
        return PointP1(g.a / g.c);
    }
    Scalar den = g.c * z.value() + g.d;
    if (den.is_zero()) return PointP1::infinity();
    return PointP1((g.a * z.value() + g.b) / den);
}

inline PointP1 apply(const GroupElement& g, const PointP1& z) {
    return std::visit(
        [&z](const auto& e) -> PointP1 {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, Mobius>) {
                return apply(e, z);
            } else {
                if (z.is_infinity()) return z;
                if constexpr (std::is_same_v<E, Affine>) return PointP1(e.a * z.value() + e.b);
                else return PointP1(e.a * z.value());
            }
        },
        g);
}

inline Configuration apply(const GroupElement& g, const Configuration& c) {
    std::vector<PointP1> out;
    for (const auto& p : c.points()) out.push_back(apply(g, p));
    return Configuration(c.space(), out);
}

/// f o g
inline Mobius compose(const Mobius& f, const Mobius& g) {
    return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

inline Mobius inverse(const Mobius& g) { return {g.d, -g.b, -g.c, g.a}; }

/// Equal as maps, i.e. as matrices up to a nonzero common factor.
inline bool projectively_equal(const Mobius& f, const Mobius& g) {
    // All 2x2 minors of the 2x4 matrix [f; g] vanish.
    const Scalar fv[4] = {f.a, f.b, f.c, f.d};
    const Scalar gv[4] = {g.a, g.b, g.c, g.d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!(fv[i] * gv[j] == fv[j] * gv[i])) return false;
    return true;
}

inline std::string to_string(const GroupElement& g) {
    return std::visit(
        [](const auto& e) -> std::string {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, Mobius>)
                return "z -> ((" + e.a.to_string() + ")z + (" + e.b.to_string() + ")) / ((" + e.c.to_string() +
                       ")z + (" + e.d.to_string() + "))";
            else if constexpr (std::is_same_v<E, Affine>)
                return "z -> (" + e.a.to_string() + ")z + (" + e.b.to_string() + ")";
            else
                return "z -> (" + e.a.to_string() + ")z";
        },
        g);
}

namespace detail {

inline Field field_of(const std::vector<PointP1>& pts) {
    for (const auto& p : pts)
        if (!p.is_infinity()) return p.value().field();
    return exact_field;
}

inline Field field_of(const Configuration& a, const Configuration& b) {
    Field fa = field_of(a.points());
    return fa.exact() ? field_of(b.points()) : fa;
}

/// Sends (z1, z2, z3) to (0, 1, infinity).
inline Mobius to_standard(const PointP1& z1, const PointP1& z2, const PointP1& z3, const Field& f) {
    const Scalar one = Scalar::one(f);
    const Scalar zero = Scalar::zero(f);
    if (z1.is_infinity()) return {zero, z2.value() - z3.value(), one, -z3.value()};
    if (z2.is_infinity()) return {one, -z1.value(), one, -z3.value()};
    if (z3.is_infinity()) return {one, -z1.value(), zero, z2.value() - z1.value()};
    const Scalar& a = z1.value();
    const Scalar& b = z2.value();
    const Scalar& c = z3.value();
    return {b - c, -a * (b - c), b - a, -c * (b - a)};
}

/// Set equality; float points are matched greedily after sorting.
inline bool same_set(std::vector<PointP1> a, std::vector<PointP1> b) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end(), less_point);
    std::sort(b.begin(), b.end(), less_point);
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j)
            if (!used[j] && p == b[j]) used[j] = found = true;
        if (!found) return false;
    }
    return true;
}

inline std::vector<PointP1> image(const GroupElement& g, const std::vector<PointP1>& pts) {
    std::vector<PointP1> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(apply(g, p));
    return out;
}

inline void require_same_size(const Configuration& a, const Configuration& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("configurations of different sizes (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
}

inline void require_space(const Configuration& c, Space s) {
    if (c.space() != s) throw std::invalid_argument("configuration lives on " + to_string(c.space()) +
                                                    ", expected " + to_string(s));
}

// Extends a set of at most three points to three, using 0, 1, infinity, -1, 2.
inline std::vector<PointP1> pad_to_three(std::vector<PointP1> pts, const Field& f) {
    const std::vector<PointP1> fillers{PointP1(Scalar::zero(f)), PointP1(Scalar::one(f)), PointP1::infinity(),
                                       PointP1(Scalar::from_int(-1, f)), PointP1(Scalar::from_int(2, f))};
    for (const auto& c : fillers) {
        if (pts.size() >= 3) break;
        if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(c);
    }
    return pts;
}

}  // namespace detail

/// The unique Mobius map with a_i -> b_i.
inline Mobius mobius_from_triples(const PointP1& a1, const PointP1& a2, const PointP1& a3, const PointP1& b1,
                                  const PointP1& b2, const PointP1& b3) {
    if (a1 == a2 || a1 == a3 || a2 == a3 || b1 == b2 || b1 == b3 || b2 == b3)
        throw std::invalid_argument("mobius_from_triples: repeated point in a triple");
    Field f = detail::field_of({a1, a2, a3, b1, b2, b3});
    return compose(inverse(detail::to_standard(b1, b2, b3, f)), detail::to_standard(a1, a2, a3, f));
}

inline std::optional<GroupElement> p1_equivalent(const Configuration& a, const Configuration& b) {
    detail::require_space(a, Space::P1);
    detail::require_space(b, Space::P1);
    detail::require_same_size(a, b);
    Field f = detail::field_of(a, b);
    const auto& pa = a.points();
    const auto& pb = b.points();
    if (pa.size() <= 3) {
        auto ta = detail::pad_to_three(pa, f);
        auto tb = detail::pad_to_three(pb, f);
        return mobius_from_triples(ta[0], ta[1], ta[2], tb[0], tb[1], tb[2]);
    }
    const std::size_t n = pb.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || i == k || j == k) continue;
                GroupElement g = mobius_from_triples(pa[0], pa[1], pa[2], pb[i], pb[j], pb[k]);
                if (detail::same_set(detail::image(g, pa), pb)) return g;
            }
    return std::nullopt;
}

inline std::optional<GroupElement> affine_equivalent(const Configuration& a, const Configuration& b) {
    detail::require_space(a, Space::AFF);
    detail::require_space(b, Space::AFF);
    detail::require_same_size(a, b);
    Field f = detail::field_of(a, b);
    const auto& pa = a.points();
    const auto& pb = b.points();
    if (pa.empty()) return Affine{Scalar::one(f), Scalar::zero(f)};
    if (pa.size() == 1) return Affine{Scalar::one(f), pb[0].value() - pa[0].value()};
    const Scalar& a1 = pa[0].value();
    const Scalar& a2 = pa[1].value();
    for (std::size_t i = 0; i < pb.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j) {
            if (i == j) continue;
            Scalar s = (pb[j].value() - pb[i].value()) / (a2 - a1);
            GroupElement g = Affine{s, pb[i].value() - s * a1};
            if (detail::same_set(detail::image(g, pa), pb)) return g;
        }
    return std::nullopt;
}

inline std::optional<GroupElement> scaling_equivalent(const Configuration& a, const Configuration& b) {
    detail::require_space(a, Space::STAR);
    detail::require_space(b, Space::STAR);
    detail::require_same_size(a, b);
    Field f = detail::field_of(a, b);
    const auto& pa = a.points();
    const auto& pb = b.points();
    if (pa.empty()) return Scaling{Scalar::one(f)};
    for (const auto& target : pb) {
        GroupElement g = Scaling{target.value() / pa[0].value()};
        if (detail::same_set(detail::image(g, pa), pb)) return g;
    }
    return std::nullopt;
}

/// Dispatches on the configuration space.
inline std::optional<GroupElement> configurations_equivalent(const Configuration& a, const Configuration& b) {
    switch (a.space()) {
        case Space::P1: return p1_equivalent(a, b);
        case Space::AFF: return affine_equivalent(a, b);
        case Space::STAR: return scaling_equivalent(a, b);
    }
    return std::nullopt;
}

namespace detail {

inline bool less_list(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), less_re_im);
}

inline std::string key_scalar(const Scalar& s) {
    if (s.is_exact()) return s.to_string();
    // Float keys are rounded so that nearby configurations print alike.
    auto v = s.to_complex();
    char re[40], im[40];
    std::snprintf(re, sizeof re, "%.8g", v.real() == 0 ? 0.0 : v.real());
    std::snprintf(im, sizeof im, "%+.8g", v.imag() == 0 ? 0.0 : v.imag());
    if (std::abs(v.imag()) < 1e-12) return re;
    return std::string(re) + im + "i";
}

inline std::string key_text(const std::vector<std::string>& head, const std::vector<Scalar>& rest) {
    std::string out = "[";
    bool first = true;
    for (const auto& h : head) {
        out += (first ? "" : ",") + h;
        first = false;
    }
    for (const auto& s : rest) {
        out += (first ? "" : ",") + key_scalar(s);
        first = false;
    }
    return out + "]";
}

}  // namespace detail

/// Group-invariant text; in exact mode, equal keys iff equivalent configurations.
inline std::string canonical_key(const Configuration& c) {
    const auto& pts = c.points();
    const std::size_t n = pts.size();
    Field f = detail::field_of(pts);
    switch (c.space()) {
        case Space::P1: {
            const std::vector<std::string> head{"0", "1", "∞"};
            if (n <= 3) return detail::key_text({head.begin(), head.begin() + static_cast<long>(n)}, {});
            std::optional<std::vector<Scalar>> best;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        if (i == j || i == k || j == k) continue;
                        Mobius m = detail::to_standard(pts[i], pts[j], pts[k], f);
                        std::vector<Scalar> rest;
                        for (std::size_t r = 0; r < n; ++r)
                            if (r != i && r != j && r != k) rest.push_back(apply(m, pts[r]).value());
                        std::sort(rest.begin(), rest.end(), less_re_im);
                        if (!best || detail::less_list(rest, *best)) best = rest;
                    }
            return detail::key_text(head, *best);
        }
        case Space::AFF: {
            if (n == 0) return "[]";
            if (n == 1) return "[0]";
            std::optional<std::vector<Scalar>> best;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const Scalar& o = pts[i].value();
                    Scalar unit = pts[j].value() - o;
                    std::vector<Scalar> rest;
                    for (std::size_t r = 0; r < n; ++r)
                        if (r != i && r != j) rest.push_back((pts[r].value() - o) / unit);
                    std::sort(rest.begin(), rest.end(), less_re_im);
                    if (!best || detail::less_list(rest, *best)) best = rest;
                }
            return detail::key_text({"0", "1"}, *best);
        }
        case Space::STAR: {
            if (n == 0) return "[]";
            std::optional<std::vector<Scalar>> best;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Scalar> scaled;
                for (const auto& p : pts) scaled.push_back(p.value() / pts[i].value());
                std::sort(scaled.begin(), scaled.end(), less_re_im);
                if (!best || detail::less_list(scaled, *best)) best = scaled;
            }
            return detail::key_text({}, *best);
        }
    }
    return "[]";
}

}  // namespace qhc
