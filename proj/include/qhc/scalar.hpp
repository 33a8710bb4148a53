#pragma once

// Coefficient field for the whole library: exact Gaussian rationals backed by
// GMP, or complex doubles compared with a relative tolerance.

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace qhc {

enum class Mode { exact, floating };

/// Arithmetic context carried by polynomials so that constants can be built
/// in the right mode.
struct Field {
    Mode mode = Mode::exact;
    double tol = 1e-9;

    bool exact() const { return mode == Mode::exact; }
    friend bool operator==(const Field&, const Field&) = default;
};

inline constexpr Field exact_field{Mode::exact, 1e-9};
inline Field float_field(double tol = 1e-9) { return {Mode::floating, tol}; }

class Scalar {
public:
    struct Gaussian {
        mpq_class re;
        mpq_class im;
    };
    struct Approx {
        std::complex<double> value;
        double tol;
    };

    Scalar() : rep_(Gaussian{0, 0}) {}
    Scalar(long v) : rep_(Gaussian{v, 0}) {}  // NOLINT: implicit by intent
    Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT

    static Scalar exact(mpq_class re, mpq_class im = 0) {
        re.canonicalize();
        im.canonicalize();
        Scalar s;
        s.rep_ = Gaussian{std::move(re), std::move(im)};
        return s;
    }
    static Scalar approx(std::complex<double> v, double tol = 1e-9) {
        if (v.real() == 0.0) v.real(0.0);  // drop negative zero
        if (v.imag() == 0.0) v.imag(0.0);
        Scalar s;
        s.rep_ = Approx{v, tol};
        return s;
    }
    static Scalar from_int(long v, const Field& f) {
        return f.exact() ? exact(v) : approx(static_cast<double>(v), f.tol);
    }
    static Scalar zero(const Field& f) { return from_int(0, f); }
    static Scalar one(const Field& f) { return from_int(1, f); }
    static Scalar imag_unit(const Field& f) {
        return f.exact() ? exact(0, 1) : approx({0.0, 1.0}, f.tol);
    }

    bool is_exact() const { return std::holds_alternative<Gaussian>(rep_); }
    Mode mode() const { return is_exact() ? Mode::exact : Mode::floating; }
    double tol() const { return is_exact() ? 0.0 : std::get<Approx>(rep_).tol; }
    Field field() const { return is_exact() ? exact_field : float_field(tol()); }

    const Gaussian& gaussian() const { return std::get<Gaussian>(rep_); }
    const mpq_class& re() const { return gaussian().re; }
    const mpq_class& im() const { return gaussian().im; }

    std::complex<double> to_complex() const {
        if (auto g = std::get_if<Gaussian>(&rep_)) return {g->re.get_d(), g->im.get_d()};
        return std::get<Approx>(rep_).value;
    }
    double abs() const { return std::abs(to_complex()); }

    /// Same value in the requested field (exact values are rounded to doubles).
    Scalar in(const Field& f) const {
        if (f.exact()) {
            if (!is_exact()) throw std::logic_error("cannot convert a floating scalar to exact mode");
            return *this;
        }
        return approx(to_complex(), f.tol);
    }

    bool is_zero() const {
        if (auto g = std::get_if<Gaussian>(&rep_)) return sgn(g->re) == 0 && sgn(g->im) == 0;
        const auto& a = std::get<Approx>(rep_);
        return std::abs(a.value) <= a.tol;
    }
    bool is_real() const {
        if (auto g = std::get_if<Gaussian>(&rep_)) return sgn(g->im) == 0;
        const auto& a = std::get<Approx>(rep_);
        return std::abs(a.value.imag()) <= a.tol * std::max(1.0, std::abs(a.value));
    }
    bool is_one() const { return *this == Scalar::one(field()); }

    Scalar conj() const {
        if (auto g = std::get_if<Gaussian>(&rep_)) return exact(g->re, -g->im);
        const auto& a = std::get<Approx>(rep_);
        return approx(std::conj(a.value), a.tol);
    }

    Scalar operator-() const {
        if (auto g = std::get_if<Gaussian>(&rep_)) return exact(-g->re, -g->im);
        const auto& a = std::get<Approx>(rep_);
        return approx(-a.value, a.tol);
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact())
            return exact(a.re() + b.re(), a.im() + b.im());
        return approx(a.to_complex() + b.to_complex(), joint_tol(a, b));
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact())
            return exact(a.re() - b.re(), a.im() - b.im());
        return approx(a.to_complex() - b.to_complex(), joint_tol(a, b));
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) {
            const auto& x = a.gaussian();
            const auto& y = b.gaussian();
            return exact(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
        }
        return approx(a.to_complex() * b.to_complex(), joint_tol(a, b));
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("division by zero scalar");
        if (a.is_exact() && b.is_exact()) {
            const auto& x = a.gaussian();
            const auto& y = b.gaussian();
            mpq_class norm = y.re * y.re + y.im * y.im;
            return exact((x.re * y.re + x.im * y.im) / norm, (x.im * y.re - x.re * y.im) / norm);
        }
        return approx(a.to_complex() / b.to_complex(), joint_tol(a, b));
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar pow(long e) const {
        if (e < 0) return Scalar::one(field()) / pow(-e);
        Scalar result = Scalar::one(field());
        Scalar base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Exact equality, or |a-b| <= tol * max(1, |a|, |b|) when either side is floating.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact())
            return a.re() == b.re() && a.im() == b.im();
        auto x = a.to_complex();
        auto y = b.to_complex();
        double scale = std::max({1.0, std::abs(x), std::abs(y)});
        return std::abs(x - y) <= joint_tol(a, b) * scale;
    }

    /// Total order by (re, im); used for canonical sorting only.
    friend bool less_re_im(const Scalar& a, const Scalar& b) {
        if (a.is_exact() && b.is_exact()) {
            int c = cmp(a.re(), b.re());
            if (c != 0) return c < 0;
            return a.im() < b.im();
        }
        auto x = a.to_complex();
        auto y = b.to_complex();
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    }

    std::string to_string() const;

private:
    static double joint_tol(const Scalar& a, const Scalar& b) {
        return std::max(a.tol(), b.tol());
    }

    std::variant<Gaussian, Approx> rep_;
};

bool less_re_im(const Scalar& a, const Scalar& b);

namespace detail {

inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

// "a", "a+bi", "bi", "i", "-i"; b printed as "1/2i" for non-integers.
template <class Real, class Fmt>
std::string format_complex(const Real& re, const Real& im, bool re_zero, bool im_zero,
                           bool im_is_one, bool im_is_minus_one, bool im_negative, Fmt fmt) {
    if (im_zero) return fmt(re);
    std::string imag;
    if (im_is_one) imag = "i";
    else if (im_is_minus_one) imag = "-i";
    else imag = fmt(im) + "i";
    if (re_zero) return imag;
    std::string out = fmt(re);
    if (!im_negative) out += "+";
    return out + imag;
}

}  // namespace detail

inline std::string Scalar::to_string() const {
    if (is_exact()) {
        const auto& g = gaussian();
        return detail::format_complex(g.re, g.im, sgn(g.re) == 0, sgn(g.im) == 0, g.im == 1,
                                      g.im == -1, sgn(g.im) < 0, detail::format_rational);
    }
    auto v = to_complex();
    return detail::format_complex(v.real(), v.imag(), v.real() == 0.0, v.imag() == 0.0,
                                  v.imag() == 1.0, v.imag() == -1.0, v.imag() < 0.0,
                                  detail::format_double);
}

/// A point of the projective line: a finite scalar or the tagged point at infinity.
class PointP1 {
public:
    PointP1() = default;
    PointP1(Scalar v) : value_(std::move(v)) {}  // NOLINT
    static PointP1 infinity() {
        PointP1 p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }
    const Scalar& value() const {
        if (infinite_) throw std::logic_error("point at infinity has no finite value");
        return value_;
    }

    friend bool operator==(const PointP1& a, const PointP1& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    /// Finite points by (re, im), infinity last.
    friend bool less_point(const PointP1& a, const PointP1& b) {
        if (a.infinite_ || b.infinite_) return !a.infinite_ && b.infinite_;
        return less_re_im(a.value_, b.value_);
    }

    std::string to_string() const { return infinite_ ? "∞" : value_.to_string(); }

private:
    Scalar value_;
    bool infinite_ = false;
};

bool less_point(const PointP1& a, const PointP1& b);

}  // namespace qhc
