#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <sstream>

#include "interval.hpp"

namespace bihar {

using Rational = boost::rational<long long>;

inline Rational make_rational(long long num, long long den = 1) {
    return Rational(num, den);
}

/// Exact conversion: every finite double is a dyadic rational. Throws if the
/// value does not fit in long long numerator/denominator.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    if (x == 0.0) return Rational(0);
    int exp2 = 0;
    double m = std::frexp(x, &exp2); // x = m * 2^exp2, 0.5 <= |m| < 1
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp2 -= 53;
    while (mant % 2 == 0 && exp2 < 0) { mant /= 2; ++exp2; }
    if (exp2 >= 0) {
        if (exp2 > 62) throw std::overflow_error("rational_from_double: exponent too large");
        return Rational(mant * (1LL << exp2));
    }
    if (-exp2 > 62) throw std::overflow_error("rational_from_double: exponent too small");
    return Rational(mant, 1LL << (-exp2));
}

/// Parses "p", "p/q", or a plain decimal like "3.5".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(s.substr(0, slash));
        long long q = std::stoll(s.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long num = std::stoll(digits);
        long long den = 1;
        for (std::size_t i = 0; i < s.size() - dot - 1; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(std::stoll(s));
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline long double to_long_double(const Rational& r) {
    return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
}

/// Enclosure of the exact rational value.
inline Interval to_interval(const Rational& r) {
    return div(Interval(static_cast<double>(r.numerator())),
               Interval(static_cast<double>(r.denominator())));
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

/// True if the rational is exactly representable as a double
/// (dyadic denominator, mantissa within 53 bits).
inline bool fits_double(const Rational& r) {
    double d = to_double(r);
    if (!std::isfinite(d)) return false;
    try {
        return rational_from_double(d) == r;
    } catch (const std::overflow_error&) {
        return false;
    }
}

/// x^q for exact rational q. Nonnegative base required for fractional q;
/// x.lo == 0 follows the limit convention (0^q = 0 for q > 0, +inf for q < 0).
inline Interval pow_i(const Interval& x, const Rational& q) {
    if (x.is_empty()) return x;
    if (q == Rational(0)) return Interval(1.0);
    if (is_integer(q)) return int_pow(x, q.numerator());
    if (x.lo() < 0.0)
        throw DomainError("pow_i: fractional power of an interval with negative part");
    const double inf = std::numeric_limits<double>::infinity();
    bool incr = q > Rational(0);
    auto mono_pow = [&](double lo_arg, double hi_arg) -> Interval {
        double qe = to_double(q);
        if (fits_double(q)) {
            // pow is monotone in the base here; widen for libm slack
            double plo = detail::trans_down(std::pow(lo_arg, qe));
            double phi = detail::trans_up(std::pow(hi_arg, qe));
            return Interval(std::max(plo, 0.0), phi);
        }
        Interval qi = to_interval(q);
        Interval r = exp_i(mul(qi, ln_i(Interval(lo_arg, hi_arg))));
        return r;
    };
    if (x.lo() == 0.0) {
        if (x.hi() == 0.0) return incr ? Interval(0.0) : Interval(inf, inf);
        if (incr) {
            Interval t = mono_pow(x.hi(), x.hi());
            return Interval(0.0, t.hi());
        }
        Interval t = mono_pow(x.hi(), x.hi());
        return Interval(t.lo(), inf);
    }
    if (incr) return mono_pow(x.lo(), x.hi());
    Interval a = mono_pow(x.hi(), x.hi());
    Interval b = mono_pow(x.lo(), x.lo());
    return Interval(a.lo(), b.hi());
}

} // namespace bihar
