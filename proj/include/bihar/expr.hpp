#pragma once

#include <memory>
#include <string>
#include <sstream>
#include <stdexcept>

#include "logpoly.hpp"

namespace bihar {

/// Radial expression: log-polynomial leaves combined by +, *, /, unary
/// minus, exp(.) and integer powers. Immutable; shared subtrees are fine.
class Expr {
public:
    enum class Kind { Leaf, Sum, Product, Quotient, Exp, Neg, Pow };

    static Expr leaf(LogPolynomial p) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Leaf;
        n->poly = std::move(p);
        return Expr(std::move(n));
    }
    static Expr constant(const Rational& c) { return leaf(LogPolynomial::constant(c)); }

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(Kind::Sum, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(Kind::Sum, a, -b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(Kind::Product, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(Kind::Quotient, a, b); }
    friend Expr operator-(const Expr& a) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Neg;
        n->left = a.node_;
        return Expr(std::move(n));
    }
    static Expr exp(const Expr& a) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Exp;
        n->left = a.node_;
        return Expr(std::move(n));
    }
    static Expr pow(const Expr& a, long long p) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Pow;
        n->left = a.node_;
        n->ipow = p;
        return Expr(std::move(n));
    }

    Kind kind() const { return node_->kind; }

    Interval eval(const Interval& r) const { return eval_node(*node_, r); }
    long double eval_ld(long double r) const { return eval_ld_node(*node_, r); }

    std::string to_string() const {
        std::ostringstream os;
        print(*node_, os);
        return os.str();
    }

    static Expr parse(const std::string& s);

private:
    struct Node {
        Kind kind;
        LogPolynomial poly;                 // Leaf
        std::shared_ptr<const Node> left;   // unary / binary
        std::shared_ptr<const Node> right;  // binary
        long long ipow = 0;                 // Pow
    };

    static Expr binary(Kind k, const Expr& a, const Expr& b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->left = a.node_;
        n->right = b.node_;
        return Expr(std::move(n));
    }

    static Interval eval_node(const Node& n, const Interval& r) {
        switch (n.kind) {
        case Kind::Leaf: return n.poly.eval(r);
        case Kind::Sum: return add(eval_node(*n.left, r), eval_node(*n.right, r));
        case Kind::Product: return mul(eval_node(*n.left, r), eval_node(*n.right, r));
        case Kind::Quotient: return div(eval_node(*n.left, r), eval_node(*n.right, r));
        case Kind::Exp: return exp_i(eval_node(*n.left, r));
        case Kind::Neg: return neg(eval_node(*n.left, r));
        case Kind::Pow: return int_pow(eval_node(*n.left, r), n.ipow);
        }
        throw std::logic_error("Expr: bad node kind");
    }

    static long double eval_ld_node(const Node& n, long double r) {
        switch (n.kind) {
        case Kind::Leaf: return n.poly.eval_ld(r);
        case Kind::Sum: return eval_ld_node(*n.left, r) + eval_ld_node(*n.right, r);
        case Kind::Product: return eval_ld_node(*n.left, r) * eval_ld_node(*n.right, r);
        case Kind::Quotient: return eval_ld_node(*n.left, r) / eval_ld_node(*n.right, r);
        case Kind::Exp: return std::exp(eval_ld_node(*n.left, r));
        case Kind::Neg: return -eval_ld_node(*n.left, r);
        case Kind::Pow: {
            long double b = eval_ld_node(*n.left, r);
            return std::pow(b, static_cast<long double>(n.ipow));
        }
        }
        throw std::logic_error("Expr: bad node kind");
    }

    static void print(const Node& n, std::ostringstream& os) {
        switch (n.kind) {
        case Kind::Leaf: os << '{' << n.poly.to_string() << '}'; return;
        case Kind::Sum:
            os << '(';
            print(*n.left, os);
            os << " + ";
            print(*n.right, os);
            os << ')';
            return;
        case Kind::Product:
            os << '(';
            print(*n.left, os);
            os << " * ";
            print(*n.right, os);
            os << ')';
            return;
        case Kind::Quotient:
            os << '(';
            print(*n.left, os);
            os << " / ";
            print(*n.right, os);
            os << ')';
            return;
        case Kind::Exp:
            os << "exp(";
            print(*n.left, os);
            os << ')';
            return;
        case Kind::Neg:
            os << "-(";
            print(*n.left, os);
            os << ')';
            return;
        case Kind::Pow:
            os << '(';
            print(*n.left, os);
            os << ")^" << n.ipow;
            return;
        }
    }

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

namespace detail {

// Grammar: expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | primary ['^' int] ;
// primary := 'exp' '(' expr ')' | '(' expr ')' | '{' logpoly '}'
struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ExprParser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    Expr primary() {
        skip_ws();
        if (pos + 2 < s.size() && s.compare(pos, 3, "exp") == 0) {
            pos += 3;
            if (!eat('(')) throw std::invalid_argument("Expr::parse: '(' after exp");
            Expr inner = expr();
            if (!eat(')')) throw std::invalid_argument("Expr::parse: ')' expected");
            return Expr::exp(inner);
        }
        if (eat('(')) {
            Expr inner = expr();
            if (!eat(')')) throw std::invalid_argument("Expr::parse: ')' expected");
            return inner;
        }
        if (eat('{')) {
            std::size_t close = s.find('}', pos);
            if (close == std::string::npos)
                throw std::invalid_argument("Expr::parse: '}' expected");
            LogPolynomial p = LogPolynomial::parse(s.substr(pos, close - pos));
            pos = close + 1;
            return Expr::leaf(std::move(p));
        }
        throw std::invalid_argument("Expr::parse: primary expected at position " +
                                    std::to_string(pos));
    }

    Expr unary() {
        if (eat('-')) return -unary();
        Expr p = primary();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            if (pos < s.size() && s[pos] == '-') ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            long long n = std::stoll(s.substr(start, pos - start));
            return Expr::pow(p, n);
        }
        return p;
    }

    Expr term() {
        Expr acc = unary();
        while (true) {
            if (eat('*')) acc = acc * unary();
            else if (eat('/')) acc = acc / unary();
            else return acc;
        }
    }

    Expr expr() {
        Expr acc = term();
        while (true) {
            skip_ws();
            if (eat('+')) acc = acc + term();
            else if (pos < s.size() && s[pos] == '-') { ++pos; acc = acc - term(); }
            else return acc;
        }
    }
};

} // namespace detail

inline Expr Expr::parse(const std::string& s) {
    detail::ExprParser p(s);
    Expr e = p.expr();
    p.skip_ws();
    if (p.pos != s.size()) throw std::invalid_argument("Expr::parse: trailing input");
    return e;
}

} // namespace bihar
