#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>
#include <array>
#include <algorithm>

#include "bound.hpp"
#include "radial.hpp"

namespace bihar {

enum class CertStatus { Certified, Falsified, Inconclusive };

inline const char* to_cstring(CertStatus s) {
    switch (s) {
    case CertStatus::Certified: return "Certified";
    case CertStatus::Falsified: return "Falsified";
    case CertStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Outcome of an adaptive bisection proof of a pointwise sign claim.
/// Certified means every leaf box of the final partition had the claimed
/// sign under interval evaluation; Falsified carries a machine point whose
/// outward-rounded evaluation violates the claim.
struct Certificate {
    std::string claim;
    Interval domain;
    CertStatus status = CertStatus::Inconclusive;
    std::optional<double> witness;
    std::uint64_t subdivisions = 0;
    double max_gap = 0.0; // worst leaf margin: closest approach to sign loss
    double elapsed_seconds = 0.0;
};

enum class SignClaim {
    NonPositive, // f <= 0 on the domain
    NonNegative, // f >= 0
    Positive,    // f > 0
};

struct CertifyControl {
    BoundControl bound;          // branch-and-bound settings for enclosures
    int sign_max_depth = 60;
    std::uint64_t sign_budget = 5'000'000;
    double tail_delta = 1e-4;    // cutoff before the r=1 singularity
};

/// Adaptive bisection sign certification of f over `domain`. Deterministic:
/// boxes are processed depth-first, left child first.
template <class F>
Certificate certify_sign(F&& f, const Interval& domain, SignClaim claim,
                         std::string description, const CertifyControl& ctl = {}) {
    auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.claim = std::move(description);
    cert.domain = domain;

    auto leaf_ok = [&](const Interval& range) {
        switch (claim) {
        case SignClaim::NonPositive: return range.hi() <= 0.0;
        case SignClaim::NonNegative: return range.lo() >= 0.0;
        case SignClaim::Positive: return range.lo() > 0.0;
        }
        return false;
    };
    auto point_violates = [&](const Interval& value) {
        switch (claim) {
        case SignClaim::NonPositive: return value.lo() > 0.0;
        case SignClaim::NonNegative: return value.hi() < 0.0;
        case SignClaim::Positive: return value.hi() <= 0.0;
        }
        return false;
    };
    auto gap_of = [&](const Interval& range) {
        // distance from the certified leaf to the sign boundary
        switch (claim) {
        case SignClaim::NonPositive: return range.hi();
        default: return range.lo();
        }
    };

    struct Box { double lo, hi; int depth; };
    std::vector<Box> stack;
    stack.push_back({domain.lo(), domain.hi(), 0});
    bool exhausted = false;
    double worst_gap = claim == SignClaim::NonPositive
                           ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();

    while (!stack.empty()) {
        Box b = stack.back();
        stack.pop_back();
        Interval box(b.lo, b.hi);
        Interval range = f(box);
        if (leaf_ok(range)) {
            if (claim == SignClaim::NonPositive)
                worst_gap = std::max(worst_gap, gap_of(range));
            else
                worst_gap = std::min(worst_gap, gap_of(range));
            continue;
        }
        double m = box.mid();
        Interval at_point = f(Interval(m));
        if (point_violates(at_point)) {
            cert.status = CertStatus::Falsified;
            cert.witness = m;
            cert.max_gap = claim == SignClaim::NonPositive ? at_point.lo() : at_point.hi();
            cert.elapsed_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return cert;
        }
        if (b.depth >= ctl.sign_max_depth || cert.subdivisions >= ctl.sign_budget ||
            !(b.lo < m && m < b.hi)) {
            exhausted = true;
            break;
        }
        ++cert.subdivisions;
        stack.push_back({m, b.hi, b.depth + 1}); // right pushed first,
        stack.push_back({b.lo, m, b.depth + 1}); // left processed first
    }

    cert.status = exhausted ? CertStatus::Inconclusive : CertStatus::Certified;
    cert.max_gap = std::isfinite(worst_gap) ? worst_gap : 0.0;
    cert.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

// ---------------------------------------------------------------------------
// Regularized ratio expressions
// ---------------------------------------------------------------------------

/// (r^4 Delta^2 w_m) / (r^4 e^{w_m}) as an expression continuous on [0,1].
/// Its sup over [0,1] is the sharp admissibility threshold for lambda'.
inline Expr lambda_ratio_expr(const Dimension& dim, const Rational& m) {
    Expr num = Expr::leaf(regularized_bilaplacian_w(m, dim));
    Expr inv_exp = Expr::exp(Expr::leaf(-regularized_exponent_w(m)));
    return num * inv_exp;
}

/// r^4 * hr1_weight, log-free and continuous on [0, 1):
/// A / ((1-q)(1-p)) + B / (1-q) with q = r^{N/2-2}, p = (9/10) r^{N/2-1}.
inline Expr regularized_hr1_weight(const Dimension& dim) {
    if (dim.N < 5) throw DomainError("regularized_hr1_weight: requires N >= 5");
    Expr one_q = Expr::leaf(weights::one_minus_q(dim));
    Expr one_p = Expr::leaf(weights::one_minus_p(dim));
    Expr first = Expr::constant(weights::hr1_first_constant(dim)) / (one_q * one_p);
    Expr second = Expr::constant(weights::hr1_second_constant(dim)) / one_q;
    return first + second;
}

/// (r^4 hr1_weight) / (r^4 e^{w_m}): the admissible-beta ratio. Tends to
/// H_N e^{4/m} at r=0 and diverges at r=1.
inline Expr beta_ratio_expr(const Dimension& dim, const Rational& m) {
    return regularized_hr1_weight(dim) * Expr::exp(Expr::leaf(-regularized_exponent_w(m)));
}

/// Classical-route ratio H_N e^{4/m - (4/m) r^m}; its inf on [0,1] is H_N.
inline Expr classical_beta_ratio_expr(const Dimension& dim, const Rational& m) {
    return Expr::constant(dim.H()) * Expr::exp(Expr::leaf(-regularized_exponent_w(m)));
}

// ---------------------------------------------------------------------------
// Certification jobs
// ---------------------------------------------------------------------------

/// (cond1): r^4 Delta^2 w_m - lambda' r^4 e^{w_m} <= 0 on [0,1].
inline Certificate check_cond1(const Dimension& dim, const Rational& m,
                               double lambda_prime, const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("check_cond1: requires N >= 5");
    if (!(lambda_prime > 0.0)) throw DomainError("check_cond1: lambda' must be positive");
    Expr residual = Expr::leaf(regularized_bilaplacian_w(m, dim)) -
                    Expr::constant(rational_from_double(lambda_prime)) *
                        Expr::exp(Expr::leaf(regularized_exponent_w(m)));
    auto f = [&](const Interval& r) { return residual.eval(r); };
    std::string desc = "cond1: r^4*bilap(w_m) <= " + std::to_string(lambda_prime) +
                       " * r^4*e^{w_m} on [0,1], N=" + std::to_string(dim.N) +
                       ", m=" + to_string(m);
    return certify_sign(f, Interval(0.0, 1.0), SignClaim::NonPositive, desc, ctl);
}

/// (cond2), via the pointwise sufficient condition hr1_weight >= beta e^{w_m}.
/// On [0, 1-delta] the denominator-cleared form
///   A + B(1-p) - beta e^{-4/m + (4/m)r^m} (1-q)(1-p) >= 0
/// is certified; on [1-delta, 1) the weight side dominates its value at
/// 1-delta (both denominators shrink toward r=1) while the exponential side
/// is at most 1, so it suffices that the regularized weight at 1-delta
/// already exceeds beta.
inline Certificate check_cond2(const Dimension& dim, const Rational& m,
                               double beta, const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("check_cond2: requires N >= 5");
    if (!(beta > 0.0)) throw DomainError("check_cond2: beta must be positive");
    Expr one_q = Expr::leaf(weights::one_minus_q(dim));
    Expr one_p = Expr::leaf(weights::one_minus_p(dim));
    Expr cleared = Expr::constant(weights::hr1_first_constant(dim)) +
                   Expr::constant(weights::hr1_second_constant(dim)) * one_p -
                   Expr::constant(rational_from_double(beta)) *
                       Expr::exp(Expr::leaf(regularized_exponent_w(m))) * one_q * one_p;
    auto f = [&](const Interval& r) { return cleared.eval(r); };
    double cut = 1.0 - ctl.tail_delta;
    std::string desc = "cond2: hr1_weight >= " + std::to_string(beta) +
                       " * e^{w_m} on (0,1), N=" + std::to_string(dim.N) +
                       ", m=" + to_string(m);
    Certificate cert =
        certify_sign(f, Interval(0.0, cut), SignClaim::NonNegative, desc, ctl);
    if (cert.status != CertStatus::Certified) return cert;
    // monotone tail: regularized weight at the cutoff must already beat beta
    Interval tail = regularized_hr1_weight(dim).eval(Interval(cut));
    if (!(tail.lo() >= beta)) cert.status = CertStatus::Inconclusive;
    return cert;
}

/// Enclosure of S_N = sup_{[0,1]} (r^4 Delta^2 w_m)/(r^4 e^{w_m}).
/// Any lambda' >= S_N.hi satisfies (cond1).
inline BoundEnclosure lambda_prime_enclosure(const Dimension& dim, const Rational& m,
                                             const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("lambda_prime_enclosure: requires N >= 5");
    Expr ratio = lambda_ratio_expr(dim, m);
    auto f = [&](const Interval& r) { return ratio.eval(r); };
    return certified_sup(f, Interval(0.0, 1.0), ctl.bound);
}

/// Enclosure of I_N = inf_{[0,1)} hr1_weight / e^{w_m} (regularized).
/// Any beta <= I_N.lo satisfies the pointwise condition behind (cond2).
/// The inf is computed over [0, 1-delta]; on the tail the ratio exceeds the
/// regularized weight at 1-delta, which is checked to dominate the result.
inline BoundEnclosure beta_enclosure(const Dimension& dim, const Rational& m,
                                     const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("beta_enclosure: requires N >= 5");
    Expr ratio = beta_ratio_expr(dim, m);
    auto f = [&](const Interval& r) { return ratio.eval(r); };
    double cut = 1.0 - ctl.tail_delta;
    BoundEnclosure enc = certified_inf(f, Interval(0.0, cut), ctl.bound);
    Interval tail = regularized_hr1_weight(dim).eval(Interval(cut));
    if (!(tail.lo() >= enc.value.hi())) enc.converged = false;
    return enc;
}

/// Classical route used for N >= 32: inf over [0,1] of H_N e^{4/m-(4/m)r^m},
/// attained at r = 1 with value H_N.
inline BoundEnclosure classical_beta_enclosure(const Dimension& dim, const Rational& m,
                                               const CertifyControl& ctl = {}) {
    Expr ratio = classical_beta_ratio_expr(dim, m);
    auto f = [&](const Interval& r) { return ratio.eval(r); };
    return certified_inf(f, Interval(0.0, 1.0), ctl.bound);
}

/// Rigorous evaluation of 8(N-2)(N-4)e^2 < N^2(N-4)^2/16, i.e. after
/// dividing by (N-4)^2/16: 128(N-2)e^2 < N^2(N-4). Exact integers against a
/// 1-ulp enclosure of e^2.
inline bool closed_form_check(const Dimension& dim) {
    if (dim.N < 5) throw DomainError("closed_form_check: requires N >= 5");
    long long n = dim.N;
    Interval lhs = mul(Interval(static_cast<double>(128 * (n - 2))), e_squared());
    double rhs = static_cast<double>(n * n * (n - 4)); // exact for N <= ~2e5
    if (lhs.hi() < rhs) return true;
    if (lhs.lo() >= rhs) return false;
    throw std::logic_error("closed_form_check: e^2 enclosure too wide to decide");
}

/// Certifies that psi(r) = r^{2-N/2} - 1 is a positive super-solution of
/// y'' + ((N-1)/r + V_r/V) y' + (W_1/V) y = 0. The residual is cleared of
/// denominators by the exact multiplier r^{N/2}(1 - 0.9 r^{N/2-1}),
/// collapsing to a single log-polynomial (all quotients cancel in rational
/// arithmetic), which is then sign-certified on [0,1].
inline Certificate check_bessel_supersolution(const Dimension& dim,
                                              const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("check_bessel_supersolution: requires N >= 5");
    LogPolynomial psi = make_psi(dim);
    Rational half_n(dim.N, 2);

    // multiplier M = r^{N/2} (1 - 0.9 r^{N/2-1}), positive on (0,1)
    LogPolynomial M = LogPolynomial::power(Rational(1), half_n) * weights::one_minus_p(dim);

    // denominator D of V: r^2 - 0.9 r^{N/2+1}; (V_r/V) M = -D' r^{N/2-2}
    LogPolynomial D;
    D.add_term(Rational(1), Rational(2), 0);
    D.add_term(Rational(-9, 10), half_n + Rational(1), 0);
    LogPolynomial vrv_times_M =
        -(D.derivative() * LogPolynomial::power(Rational(1), half_n - Rational(2)));

    // (W_1/V) psi = (N-4)^2/4 * r^{-N/2}, using psi = r^{2-N/2} (1-q) exactly
    LogPolynomial check = LogPolynomial::power(Rational(1), Rational(2) - half_n) *
                          weights::one_minus_q(dim);
    if (check != psi)
        throw std::logic_error("check_bessel_supersolution: psi factorization failed");
    LogPolynomial w1v_psi_times_M =
        LogPolynomial::power(Rational((dim.N - 4) * (dim.N - 4), 4), -half_n) * M;

    LogPolynomial cleared =
        laplacian(psi, dim) * M + psi.derivative() * vrv_times_M + w1v_psi_times_M;

    auto f = [&](const Interval& r) { return cleared.eval(r); };
    Certificate cert = certify_sign(
        f, Interval(0.0, 1.0), SignClaim::NonPositive,
        "bessel super-solution: cleared ODE residual of psi <= 0 on (0,1), N=" +
            std::to_string(dim.N),
        ctl);
    if (cert.status != CertStatus::Certified) return cert;

    // positivity of psi: 1 - r^{N/2-2} > 0 up to the cutoff; on the tail the
    // same expression is decreasing with limit 0, hence still positive.
    auto g = [&](const Interval& r) { return weights::one_minus_q(dim).eval(r); };
    Certificate pos = certify_sign(
        g, Interval(0.0, 1.0 - ctl.tail_delta), SignClaim::Positive,
        "psi > 0 on (0,1)", ctl);
    if (pos.status != CertStatus::Certified) {
        cert.status = pos.status;
        cert.witness = pos.witness;
    }
    cert.subdivisions += pos.subdivisions;
    cert.elapsed_seconds += pos.elapsed_seconds;
    return cert;
}

/// Certifies 1 - 0.9 r^{N/2-1} > 0 on (0,1) and validates the displayed
/// formula for V_r/V against exact symbolic differentiation of the
/// denominator of V (cleared identity: -r D' + 2D - (9/20)(N-2) r^{N/2+1} = 0).
inline Certificate check_vr_over_v(const Dimension& dim, const CertifyControl& ctl = {}) {
    if (dim.N < 5) throw DomainError("check_vr_over_v: requires N >= 5");
    Rational half_n(dim.N, 2);
    LogPolynomial D;
    D.add_term(Rational(1), Rational(2), 0);
    D.add_term(Rational(-9, 10), half_n + Rational(1), 0);
    LogPolynomial identity = -(LogPolynomial::power(Rational(1), Rational(1)) * D.derivative()) +
                             Rational(2) * D -
                             LogPolynomial::power(Rational(9 * (dim.N - 2), 20),
                                                  half_n + Rational(1));
    Certificate cert;
    cert.claim = "V_r/V identity (symbolic) and 1 - 0.9 r^{N/2-1} > 0, N=" +
                 std::to_string(dim.N);
    cert.domain = Interval(0.0, 1.0);
    if (!identity.is_zero()) {
        cert.status = CertStatus::Falsified;
        return cert;
    }
    auto f = [&](const Interval& r) { return weights::one_minus_p(dim).eval(r); };
    Certificate pos =
        certify_sign(f, Interval(0.0, 1.0), SignClaim::Positive, cert.claim, ctl);
    pos.claim = cert.claim;
    return pos;
}

// ---------------------------------------------------------------------------
// Per-dimension verdicts
// ---------------------------------------------------------------------------

enum class Verdict { SingularCertified, Failed };

/// Lambda'/beta values from the published summary table (13 <= N <= 31),
/// used only for comparison, never as certification inputs.
struct TableRow {
    int N;
    double lambda_prime;
    double beta;
};

inline const std::array<TableRow, 19>& table1() {
    static const std::array<TableRow, 19> rows = {{
        {13, 2525, 2560},  {14, 3050, 3545},  {15, 3610, 4765},
        {16, 4230, 6250},  {17, 4900, 8035},  {18, 5650, 10155},
        {19, 6400, 12645}, {20, 7250, 15540}, {21, 8150, 18890},
        {22, 9050, 22730}, {23, 10100, 27100}, {24, 11100, 32050},
        {25, 12200, 37630}, {26, 13500, 43870}, {27, 14500, 50800},
        {28, 16000, 58500}, {29, 17000, 67100}, {30, 18500, 76500},
        {31, 20000, 86900},
    }};
    return rows;
}

inline std::optional<TableRow> table1_row(int N) {
    for (const auto& row : table1())
        if (row.N == N) return row;
    return std::nullopt;
}

/// Default test-function exponent: m = 7/2 up to N = 31, m = 2 beyond.
inline Rational default_m(int N) {
    return N <= 31 ? Rational(7, 2) : Rational(2);
}

struct DimensionReport {
    int N = 0;
    Rational m;
    BoundEnclosure S; // sharp lambda' threshold (sup of the cond1 ratio)
    BoundEnclosure I; // sharp beta limit (inf of the weight ratio)
    std::optional<double> table_lambda;
    std::optional<double> table_beta;
    Verdict verdict = Verdict::Failed;
    std::vector<Certificate> certificates;
};

/// Full certification of one dimension: encloses S_N and I_N, checks the
/// strict gap S_N < I_N required by the singularity lemma, and attaches
/// cond1/cond2 certificates at the published table values when available.
inline DimensionReport certify_dimension(int N, const CertifyControl& ctl = {}) {
    if (N < 13)
        throw DomainError("certify_dimension: N >= 13 required (the extremal "
                          "solution is regular below)");
    Dimension dim(N);
    DimensionReport rep;
    rep.N = N;
    rep.m = default_m(N);

    rep.S = lambda_prime_enclosure(dim, rep.m, ctl);
    rep.I = N <= 31 ? beta_enclosure(dim, rep.m, ctl)
                    : classical_beta_enclosure(dim, rep.m, ctl);

    // the published margins can be narrower than the requested tolerance
    // (N=25 is within 8e-5 of its beta); sharpen a near-miss on demand
    if (auto row = table1_row(N)) {
        CertifyControl sharp = ctl;
        sharp.bound.rel_tol = ctl.bound.rel_tol / 16.0;
        if (rep.S.converged && rep.S.value.hi() > row->lambda_prime)
            rep.S = lambda_prime_enclosure(dim, rep.m, sharp);
        if (rep.I.converged && rep.I.value.lo() < row->beta)
            rep.I = beta_enclosure(dim, rep.m, sharp);
    }

    if (auto row = table1_row(N)) {
        rep.table_lambda = row->lambda_prime;
        rep.table_beta = row->beta;
        rep.certificates.push_back(check_cond1(dim, rep.m, row->lambda_prime, ctl));
        rep.certificates.push_back(check_cond2(dim, rep.m, row->beta, ctl));
    } else {
        // closed-form regime: lambda' = 8(N-2)(N-4)e^2, beta = H_N
        double lp = 8.0 * (N - 2) * (N - 4) * e_squared().hi() * (1.0 + 1e-9);
        rep.certificates.push_back(check_cond1(dim, rep.m, lp, ctl));
    }

    bool gap = rep.S.converged && rep.I.converged && rep.S.value.hi() < rep.I.value.lo();
    bool certs_ok = std::all_of(rep.certificates.begin(), rep.certificates.end(),
                                [](const Certificate& c) {
                                    return c.status == CertStatus::Certified;
                                });
    bool closed_ok = N <= 31 || closed_form_check(dim);
    rep.verdict = gap && certs_ok && closed_ok ? Verdict::SingularCertified : Verdict::Failed;
    return rep;
}

/// Least N in 13..40 for which the classical Hardy-Rellich stability bound
/// beta <= H_N already exceeds the cond1 threshold S_N. Dimensions below the
/// answer are verified to fail (H_N < S_N), so the scan is rigorous both ways.
inline int classical_hr_threshold(const Rational& m, const CertifyControl& ctl = {}) {
    if (m <= Rational(0)) throw DomainError("classical_hr_threshold: m must be positive");
    for (int N = 13; N <= 40; ++N) {
        Dimension dim(N);
        BoundEnclosure S = lambda_prime_enclosure(dim, m, ctl);
        if (!S.converged)
            throw std::runtime_error("classical_hr_threshold: enclosure did not converge");
        Interval H = to_interval(dim.H());
        if (H.lo() > S.value.hi()) return N;
        if (!(H.hi() < S.value.lo()))
            throw std::runtime_error("classical_hr_threshold: enclosure too wide at N=" +
                                     std::to_string(N));
    }
    throw std::runtime_error("classical_hr_threshold: no dimension up to 40 qualifies");
}

} // namespace bihar
