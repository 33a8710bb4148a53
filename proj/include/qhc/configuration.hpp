#pragma once

#include "qhc/scalar.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhc {

/// Where a configuration lives: the projective line, the affine line, or C*.
enum class Space { P1, AFF, STAR };

inline std::string to_string(Space s) {
    switch (s) {
        case Space::P1: return "P1";
        case Space::AFF: return "AFF";
        case Space::STAR: return "STAR";
    }
    return "?";
}

/// A finite set of distinct points carrying the moduli datum of a curve.
/// Points are kept sorted (by real part, imaginary part, infinity last).
class Configuration {
public:
    Configuration() = default;
    Configuration(Space space, std::vector<PointP1> points) : space_(space), points_(std::move(points)) {
        for (const auto& p : points_) {
            if (p.is_infinity() && space_ != Space::P1)
                throw std::invalid_argument("infinity is only allowed on P1");
            if (space_ == Space::STAR && p.value().is_zero())
                throw std::invalid_argument("a STAR configuration cannot contain 0");
        }
        std::sort(points_.begin(), points_.end(), less_point);
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (too_close(points_[i], points_[j]))
                    throw std::invalid_argument("configuration points must be pairwise distinct");
    }
    static Configuration of_scalars(Space space, const std::vector<Scalar>& values) {
        return Configuration(space, std::vector<PointP1>(values.begin(), values.end()));
    }

    Space space() const { return space_; }
    const std::vector<PointP1>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    bool is_exact() const {
        return std::all_of(points_.begin(), points_.end(),
                           [](const PointP1& p) { return p.is_infinity() || p.value().is_exact(); });
    }

    /// Smallest distance between two finite points (infinity if fewer than two).
    double min_separation() const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (!points_[i].is_infinity() && !points_[j].is_infinity())
                    best = std::min(best, (points_[i].value() - points_[j].value()).abs());
        return best;
    }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i) out += ",";
            out += points_[i].to_string();
        }
        return out + "}";
    }

private:
    // Exact: equality. Float: separation must exceed 2*tol.
    static bool too_close(const PointP1& a, const PointP1& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
        const Scalar& x = a.value();
        const Scalar& y = b.value();
        if (x.is_exact() && y.is_exact()) return x == y;
        return (x - y).abs() <= 2 * std::max(x.tol(), y.tol());
    }

    Space space_ = Space::P1;
    std::vector<PointP1> points_;
};

}  // namespace qhc
