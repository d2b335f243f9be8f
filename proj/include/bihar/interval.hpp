#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <algorithm>
#include <ostream>

namespace bihar {

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Closed interval [lo, hi] of extended reals. Every operation returns an
/// enclosure of the exact real result; outward rounding is realized by
/// error-free transformations (two-sum / fma residuals) so exact results
/// stay exact and inexact endpoints are widened by one ulp.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0), empty_(false) {}
    explicit Interval(double x) : lo_(x), hi_(x), empty_(std::isnan(x)) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw std::invalid_argument("Interval: lo > hi or NaN endpoint");
    }

    static Interval empty() {
        Interval r;
        r.empty_ = true;
        return r;
    }
    static Interval whole() {
        return Interval(-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool is_empty() const { return empty_; }
    bool is_unbounded() const {
        return !empty_ && (std::isinf(lo_) || std::isinf(hi_));
    }
    double width() const { return empty_ ? 0.0 : hi_ - lo_; }
    double mid() const {
        if (std::isinf(lo_) && std::isinf(hi_)) return 0.0;
        if (std::isinf(lo_)) return -std::numeric_limits<double>::max();
        if (std::isinf(hi_)) return std::numeric_limits<double>::max();
        double m = 0.5 * (lo_ + hi_);
        if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
        return m;
    }
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

    bool contains(double x) const { return !empty_ && lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const {
        return !empty_ && !o.empty_ && lo_ <= o.lo_ && o.hi_ <= hi_;
    }
    bool contains_zero() const { return contains(0.0); }

    bool operator==(const Interval& o) const {
        if (empty_ || o.empty_) return empty_ == o.empty_;
        return lo_ == o.lo_ && hi_ == o.hi_;
    }

private:
    double lo_, hi_;
    bool empty_;
};

namespace detail {

// s = fl(a+b); returns sign of the rounding error (a+b) - s, 0 if exact.
inline int sum_err_sign(double a, double b, double s) {
    if (!std::isfinite(s)) return s > 0 ? 1 : -1;
    double bv = s - a;
    double err = (a - (s - bv)) + (b - bv);
    return (err > 0) - (err < 0);
}

inline double add_down(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (s > 0) return std::numeric_limits<double>::max();
        return s;
    }
    return sum_err_sign(a, b, s) < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (std::isinf(s)) {
        if (s < 0) return -std::numeric_limits<double>::max();
        return s;
    }
    return sum_err_sign(a, b, s) > 0 ? next_up(s) : s;
}

// 0 * inf corners are treated as 0: the exact product set only approaches
// such corners in the limit, and the finite corners already bound it.
inline double mul_corner(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return 0.0;
    return p;
}

inline double mul_down(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return 0.0;
    if (std::isinf(p)) {
        if (p > 0) return std::numeric_limits<double>::max();
        return p;
    }
    if (std::isinf(a) || std::isinf(b)) return p;
    double e = std::fma(a, b, -p);
    return e < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return 0.0;
    if (std::isinf(p)) {
        if (p < 0) return -std::numeric_limits<double>::max();
        return p;
    }
    if (std::isinf(a) || std::isinf(b)) return p;
    double e = std::fma(a, b, -p);
    return e > 0 ? next_up(p) : p;
}

// Sign of (a/b - q) equals sign of -(q*b - a)/b.
inline int div_err_sign(double a, double b, double q) {
    double r = std::fma(q, b, -a);
    if (r == 0.0) return 0;
    int sr = r > 0 ? 1 : -1;
    int sb = b > 0 ? 1 : -1;
    return -sr * sb;
}

inline double div_down(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return 0.0;
    if (std::isinf(q)) {
        if (std::isinf(a) || b == 0.0) return q > 0 ? q : q;
        return q > 0 ? std::numeric_limits<double>::max() : q;
    }
    if (std::isinf(a) || std::isinf(b)) return q;
    return div_err_sign(a, b, q) < 0 ? next_down(q) : q;
}

inline double div_up(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return 0.0;
    if (std::isinf(q)) {
        if (std::isinf(a) || b == 0.0) return q;
        return q < 0 ? -std::numeric_limits<double>::max() : q;
    }
    if (std::isinf(a) || std::isinf(b)) return q;
    return div_err_sign(a, b, q) > 0 ? next_up(q) : q;
}

} // namespace detail

inline Interval add(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return Interval(detail::add_down(a.lo(), b.lo()), detail::add_up(a.hi(), b.hi()));
}

inline Interval neg(const Interval& a) {
    if (a.is_empty()) return a;
    return Interval(-a.hi(), -a.lo());
}

inline Interval sub(const Interval& a, const Interval& b) {
    return add(a, neg(b));
}

inline Interval mul(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    using namespace detail;
    double lo = std::min(std::min(mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi())),
                         std::min(mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())));
    double hi = std::max(std::max(mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi())),
                         std::max(mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())));
    return Interval(lo, hi);
}

/// Extended division: a divisor containing zero yields an unbounded
/// (whole- or half-line) enclosure rather than an error.
inline Interval div(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    using namespace detail;
    const double inf = std::numeric_limits<double>::infinity();
    if (b.lo() > 0.0 || b.hi() < 0.0) {
        double lo = std::min(std::min(div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi())),
                             std::min(div_down(a.hi(), b.lo()), div_down(a.hi(), b.hi())));
        double hi = std::max(std::max(div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi())),
                             std::max(div_up(a.hi(), b.lo()), div_up(a.hi(), b.hi())));
        return Interval(lo, hi);
    }
    if (b.lo() == 0.0 && b.hi() == 0.0) return Interval::whole();
    if (b.lo() < 0.0 && b.hi() > 0.0) return Interval::whole();
    if (b.lo() == 0.0) { // b = [0, b.hi], b.hi > 0
        if (a.lo() > 0.0) return Interval(div_down(a.lo(), b.hi()), inf);
        if (a.hi() < 0.0) return Interval(-inf, div_up(a.hi(), b.hi()));
        return Interval::whole();
    }
    // b = [b.lo, 0], b.lo < 0
    if (a.lo() > 0.0) return Interval(-inf, div_up(a.lo(), b.lo()));
    if (a.hi() < 0.0) return Interval(div_down(a.hi(), b.lo()), inf);
    return Interval::whole();
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return sub(a, b); }
inline Interval operator-(const Interval& a) { return neg(a); }
inline Interval operator*(const Interval& a, const Interval& b) { return mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return div(a, b); }

inline Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Interval intersect(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return Interval::empty();
    return Interval(lo, hi);
}

namespace detail {

// glibc's exp/log are faithful but not proven correctly rounded;
// two ulps of slack cover the documented worst case.
inline double trans_down(double v) {
    if (!std::isfinite(v)) return v > 0 ? std::numeric_limits<double>::max() : v;
    return next_down(next_down(v));
}
inline double trans_up(double v) {
    if (!std::isfinite(v)) return v < 0 ? -std::numeric_limits<double>::max() : v;
    return next_up(next_up(v));
}

} // namespace detail

inline Interval exp_i(const Interval& a) {
    if (a.is_empty()) return a;
    double lo = std::max(0.0, detail::trans_down(std::exp(a.lo())));
    double hi = detail::trans_up(std::exp(a.hi()));
    return Interval(lo, hi);
}

inline Interval ln_i(const Interval& a) {
    if (a.is_empty()) return a;
    if (a.hi() <= 0.0) throw DomainError("ln_i: interval lies in (-inf, 0]");
    double lo = a.lo() <= 0.0 ? -std::numeric_limits<double>::infinity()
                              : detail::trans_down(std::log(a.lo()));
    double hi = detail::trans_up(std::log(a.hi()));
    return Interval(lo, hi);
}

inline Interval sqrt_i(const Interval& a) {
    if (a.is_empty()) return a;
    if (a.hi() < 0.0) throw DomainError("sqrt_i: negative interval");
    double llo = std::max(a.lo(), 0.0);
    double slo = std::sqrt(llo);
    double shi = std::sqrt(a.hi());
    // sqrt is correctly rounded; fma residual detects the rounding direction
    double elo = std::isfinite(slo) ? std::fma(slo, slo, -llo) : 0.0;
    double ehi = std::isfinite(shi) ? std::fma(shi, shi, -a.hi()) : 0.0;
    double lo = elo > 0 ? next_down(slo) : slo;
    double hi = ehi < 0 ? next_up(shi) : shi;
    return Interval(lo, hi);
}

/// a^n for integer n by repeated interval squaring; even powers of
/// zero-containing intervals are clamped to [0, ...].
inline Interval int_pow(const Interval& a, long long n) {
    if (a.is_empty()) return a;
    if (n == 0) return Interval(1.0);
    if (n < 0) return div(Interval(1.0), int_pow(a, -n));
    if (n % 2 == 0 && a.contains_zero()) {
        Interval m(0.0, a.mag());
        Interval r(1.0);
        for (long long i = 0; i < n; ++i) r = mul(r, m);
        return Interval(std::max(0.0, r.lo()), r.hi());
    }
    Interval r(1.0);
    Interval base = a;
    long long k = n;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    if (a.is_empty()) return os << "[empty]";
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

/// Correctly rounded 1-ulp enclosure of e^2, precomputed.
inline Interval e_squared() {
    return Interval(0x1.d8e64b8d4ddadp+2, 0x1.d8e64b8d4ddaep+2);
}

} // namespace bihar
