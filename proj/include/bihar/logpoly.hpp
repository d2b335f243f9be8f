#pragma once

#include <map>
#include <vector>
#include <string>
#include <sstream>
#include <utility>
#include <cctype>
#include <stdexcept>

#include "rational.hpp"

namespace bihar {

/// Finite sum of terms c * r^q * ln(r)^k with exact rational c, q and
/// nonnegative integer k. Canonical form: terms keyed by (q, k), zero
/// coefficients pruned. Closed under d/dr and under the radial Laplacian
/// in any dimension.
class LogPolynomial {
public:
    using Key = std::pair<Rational, int>; // (exponent, log_power)

    LogPolynomial() = default;

    static LogPolynomial constant(const Rational& c) {
        LogPolynomial p;
        p.add_term(c, Rational(0), 0);
        return p;
    }
    static LogPolynomial power(const Rational& c, const Rational& q) {
        LogPolynomial p;
        p.add_term(c, q, 0);
        return p;
    }
    static LogPolynomial log_term(const Rational& c, const Rational& q, int k) {
        LogPolynomial p;
        p.add_term(c, q, k);
        return p;
    }

    void add_term(const Rational& c, const Rational& q, int k) {
        if (c == Rational(0)) return;
        if (k < 0) throw std::invalid_argument("LogPolynomial: negative log power");
        Key key{q, k};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == Rational(0)) terms_.erase(it);
        }
    }

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const LogPolynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const LogPolynomial& o) const { return !(*this == o); }

    LogPolynomial& operator+=(const LogPolynomial& o) {
        for (const auto& [key, c] : o.terms_) add_term(c, key.first, key.second);
        return *this;
    }
    LogPolynomial& operator-=(const LogPolynomial& o) {
        for (const auto& [key, c] : o.terms_) add_term(-c, key.first, key.second);
        return *this;
    }

    friend LogPolynomial operator+(LogPolynomial a, const LogPolynomial& b) { return a += b; }
    friend LogPolynomial operator-(LogPolynomial a, const LogPolynomial& b) { return a -= b; }
    friend LogPolynomial operator-(const LogPolynomial& a) {
        LogPolynomial r;
        for (const auto& [key, c] : a.terms_) r.add_term(-c, key.first, key.second);
        return r;
    }
    friend LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b) {
        LogPolynomial r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
        return r;
    }
    friend LogPolynomial operator*(const Rational& s, const LogPolynomial& a) {
        LogPolynomial r;
        for (const auto& [key, c] : a.terms_) r.add_term(s * c, key.first, key.second);
        return r;
    }

    /// Term-wise d/dr: (r^q ln^k r)' = q r^{q-1} ln^k r + k r^{q-1} ln^{k-1} r.
    LogPolynomial derivative() const {
        LogPolynomial r;
        for (const auto& [key, c] : terms_) {
            const Rational& q = key.first;
            int k = key.second;
            if (q != Rational(0)) r.add_term(c * q, q - Rational(1), k);
            if (k > 0) r.add_term(c * Rational(k), q - Rational(1), k - 1);
        }
        return r;
    }

    Interval eval(const Interval& r) const {
        Interval acc(0.0);
        Interval lnr = Interval::empty();
        for (const auto& [key, c] : terms_) {
            Interval t = to_interval(c);
            if (key.first != Rational(0)) t = mul(t, pow_i(r, key.first));
            if (key.second > 0) {
                if (lnr.is_empty()) lnr = ln_i(r);
                t = mul(t, int_pow(lnr, key.second));
            }
            acc = add(acc, t);
        }
        return acc;
    }

    long double eval_ld(long double r) const {
        long double acc = 0.0L;
        long double lr = std::log(r);
        for (const auto& [key, c] : terms_) {
            long double t = to_long_double(c);
            if (key.first != Rational(0)) t *= std::pow(r, to_long_double(key.first));
            for (int i = 0; i < key.second; ++i) t *= lr;
            acc += t;
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // highest exponent first reads naturally
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational& q = it->first.first;
            int k = it->first.second;
            Rational c = it->second;
            bool negative = c < Rational(0);
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            Rational ac = negative ? -c : c;
            bool has_factor = (q != Rational(0)) || k > 0;
            if (ac != Rational(1) || !has_factor) {
                os << bihar::to_string(ac);
                if (has_factor) os << '*';
            }
            if (q != Rational(0)) {
                os << "r^(" << bihar::to_string(q) << ')';
                if (k > 0) os << '*';
            }
            if (k == 1) os << "ln(r)";
            else if (k > 1) os << "ln(r)^" << k;
        }
        return os.str();
    }

    static LogPolynomial parse(const std::string& s);

private:
    std::map<Key, Rational> terms_;
};

namespace detail {

struct LpParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit LpParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    Rational number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        if (pos == start) throw std::invalid_argument("LogPolynomial::parse: number expected");
        return parse_rational(s.substr(start, pos - start));
    }

    Rational exponent() {
        if (eat('(')) {
            Rational q = number();
            if (!eat(')')) throw std::invalid_argument("LogPolynomial::parse: ')' expected");
            return q;
        }
        return number();
    }

    // term := [coeff] ['*'] [r^exp] ['*'] [ln(r)[^k]]
    void term(LogPolynomial& out, int sign) {
        Rational c(1);
        Rational q(0);
        int k = 0;
        skip_ws();
        bool saw_factor = false;
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                               s[pos] == '.')) {
            c = number();
            saw_factor = true;
            eat('*');
        }
        skip_ws();
        if (pos < s.size() && s[pos] == 'r' &&
            (pos + 1 >= s.size() || s[pos + 1] != 'a')) { // not a stray word
            ++pos;
            if (eat('^')) q = exponent();
            else q = Rational(1);
            saw_factor = true;
            eat('*');
        }
        skip_ws();
        if (pos + 1 < s.size() && s.compare(pos, 2, "ln") == 0) {
            pos += 2;
            if (!eat('(')) throw std::invalid_argument("LogPolynomial::parse: 'ln(' expected");
            skip_ws();
            if (pos >= s.size() || s[pos] != 'r')
                throw std::invalid_argument("LogPolynomial::parse: ln argument must be r");
            ++pos;
            if (!eat(')')) throw std::invalid_argument("LogPolynomial::parse: ')' expected");
            k = 1;
            if (eat('^')) {
                Rational kk = number();
                if (!is_integer(kk) || kk < Rational(0))
                    throw std::invalid_argument("LogPolynomial::parse: bad log power");
                k = static_cast<int>(kk.numerator());
            }
            saw_factor = true;
        }
        if (!saw_factor) throw std::invalid_argument("LogPolynomial::parse: empty term");
        out.add_term(sign < 0 ? -c : c, q, k);
    }

    LogPolynomial parse() {
        LogPolynomial out;
        skip_ws();
        if (pos < s.size() && s[pos] == '0' && pos + 1 == s.size()) return out;
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        term(out, sign);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) sign = 1;
            else if (eat('-')) sign = -1;
            else throw std::invalid_argument("LogPolynomial::parse: '+' or '-' expected");
            term(out, sign);
        }
        return out;
    }
};

} // namespace detail

inline LogPolynomial LogPolynomial::parse(const std::string& s) {
    detail::LpParser p(s);
    return p.parse();
}

} // namespace bihar
