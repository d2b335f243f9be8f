#pragma once

#include "logpoly.hpp"
#include "expr.hpp"

namespace bihar {

/// Spatial dimension with its associated constant H_N = N^2 (N-4)^2 / 16,
/// kept exact in rationals.
struct Dimension {
    int N;

    explicit Dimension(int n) : N(n) {
        if (n < 1) throw DomainError("Dimension: N must be >= 1");
    }

    Rational H() const {
        long long n = N;
        return Rational(n * n * (n - 4) * (n - 4), 16);
    }
};

/// Radial Laplacian on R^N: Delta(r^q ln^k r) =
/// q(q+N-2) r^{q-2} ln^k r + k(2q+N-2) r^{q-2} ln^{k-1} r
/// + k(k-1) r^{q-2} ln^{k-2} r. Exact in rational arithmetic.
inline LogPolynomial laplacian(const LogPolynomial& p, const Dimension& dim) {
    Rational n(dim.N);
    LogPolynomial out;
    for (const auto& [key, c] : p.terms()) {
        const Rational& q = key.first;
        int k = key.second;
        out.add_term(c * q * (q + n - Rational(2)), q - Rational(2), k);
        if (k >= 1)
            out.add_term(c * Rational(k) * (Rational(2) * q + n - Rational(2)),
                         q - Rational(2), k - 1);
        if (k >= 2)
            out.add_term(c * Rational(static_cast<long long>(k) * (k - 1)),
                         q - Rational(2), k - 2);
    }
    return out;
}

inline LogPolynomial bilaplacian(const LogPolynomial& p, const Dimension& dim) {
    return laplacian(laplacian(p, dim), dim);
}

/// w_m(r) = -4 ln r - 4/m + (4/m) r^m; satisfies w_m(1) = w_m'(1) = 0.
inline LogPolynomial make_w(const Rational& m) {
    if (m <= Rational(0)) throw DomainError("make_w: m must be positive");
    LogPolynomial w;
    w.add_term(Rational(-4), Rational(0), 1);
    w.add_term(Rational(-4) / m, Rational(0), 0);
    w.add_term(Rational(4) / m, m, 0);
    return w;
}

/// phi(r) = r^{1 - N/2} - 9/10, the Bessel-pair generator.
inline LogPolynomial make_phi(const Dimension& dim) {
    LogPolynomial p;
    p.add_term(Rational(1), Rational(2 - dim.N, 2), 0);
    p.add_term(Rational(-9, 10), Rational(0), 0);
    return p;
}

/// psi(r) = r^{2 - N/2} - 1, super-solution of the weighted ODE.
inline LogPolynomial make_psi(const Dimension& dim) {
    LogPolynomial p;
    p.add_term(Rational(1), Rational(4 - dim.N, 2), 0);
    p.add_term(Rational(-1), Rational(0), 0);
    return p;
}

namespace weights {

// 1 - r^{N/2 - 2}; positive on (0,1) for N >= 5.
inline LogPolynomial one_minus_q(const Dimension& dim) {
    LogPolynomial p = LogPolynomial::constant(Rational(1));
    p.add_term(Rational(-1), Rational(dim.N - 4, 2), 0);
    return p;
}

// 1 - (9/10) r^{N/2 - 1}; bounded below by 1/10 on [0,1].
inline LogPolynomial one_minus_p(const Dimension& dim) {
    LogPolynomial p = LogPolynomial::constant(Rational(1));
    p.add_term(Rational(-9, 10), Rational(dim.N - 2, 2), 0);
    return p;
}

inline Rational hr1_first_constant(const Dimension& dim) {
    long long n = dim.N;
    return Rational((n - 2) * (n - 2) * (n - 4) * (n - 4), 16);
}

inline Rational hr1_second_constant(const Dimension& dim) {
    long long n = dim.N;
    return Rational((n - 1) * (n - 4) * (n - 4), 4);
}

} // namespace weights

/// Weight W(r) of the strengthened inequality int (Delta u)^2 >= int W u^2:
/// (N-2)^2(N-4)^2/16 / ((r^2 - 0.9 r^{N/2+1})(r^2 - r^{N/2}))
///   + (N-1)(N-4)^2/4 / (r^2 (r^2 - r^{N/2})).
inline Expr hr1_weight(const Dimension& dim) {
    if (dim.N < 5) throw DomainError("hr1_weight: requires N >= 5");
    LogPolynomial d1; // r^2 - (9/10) r^{N/2+1}
    d1.add_term(Rational(1), Rational(2), 0);
    d1.add_term(Rational(-9, 10), Rational(dim.N + 2, 2), 0);
    LogPolynomial d2; // r^2 - r^{N/2}
    d2.add_term(Rational(1), Rational(2), 0);
    d2.add_term(Rational(-1), Rational(dim.N, 2), 0);
    LogPolynomial r2 = LogPolynomial::power(Rational(1), Rational(2));

    Expr first = Expr::constant(weights::hr1_first_constant(dim)) /
                 (Expr::leaf(d1) * Expr::leaf(d2));
    Expr second = Expr::constant(weights::hr1_second_constant(dim)) /
                  (Expr::leaf(r2) * Expr::leaf(d2));
    return first + second;
}

/// Classical-form weight N^2(N-4)^2/16 / (r^2 (r^2 - r^{N/2})).
inline Expr hr2_weight(const Dimension& dim) {
    if (dim.N < 5) throw DomainError("hr2_weight: requires N >= 5");
    LogPolynomial d2;
    d2.add_term(Rational(1), Rational(2), 0);
    d2.add_term(Rational(-1), Rational(dim.N, 2), 0);
    LogPolynomial r2 = LogPolynomial::power(Rational(1), Rational(2));
    return Expr::constant(dim.H()) / (Expr::leaf(r2) * Expr::leaf(d2));
}

/// r^4 * Delta^2 w_m as an exact log-free polynomial:
/// 8(N-2)(N-4) + 4(m+N-2)(m-2)(m+N-4) r^m.
inline LogPolynomial regularized_bilaplacian_w(const Rational& m, const Dimension& dim) {
    LogPolynomial r4 = LogPolynomial::power(Rational(1), Rational(4));
    return r4 * bilaplacian(make_w(m), dim);
}

/// Exponent of r^4 e^{w_m} = exp(-4/m + (4/m) r^m), continuous on [0,1].
inline LogPolynomial regularized_exponent_w(const Rational& m) {
    LogPolynomial p;
    p.add_term(Rational(-4) / m, Rational(0), 0);
    p.add_term(Rational(4) / m, m, 0);
    return p;
}

} // namespace bihar
