// Acceptance suite: one pass/fail line per criterion, exit nonzero if any
// criterion fails.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <bihar/certify.hpp>
#include <bihar/branch.hpp>

using namespace bihar;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("criterion %d: %-52s %s%s%s\n", number, name.c_str(),
                pass ? "PASS" : "FAIL", detail.empty() ? "" : "  -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// 1. Published-table reproduction with certified enclosures at tol 1e-4.
void criterion1() {
    CertifyControl ctl;
    ctl.bound.rel_tol = 1e-4;
    bool pass = true;
    std::string detail;
    for (const auto& row : table1()) {
        DimensionReport rep = certify_dimension(row.N, ctl);
        bool ok = rep.S.converged && rep.I.converged &&
                  rep.S.value.hi() <= row.lambda_prime &&
                  row.beta <= rep.I.value.lo() &&
                  rep.S.value.hi() < rep.I.value.lo();
        if (!ok) {
            pass = false;
            detail += "N=" + std::to_string(row.N) + " ";
        }
    }
    report(1, "table reproduction, N=13..31", pass, detail);
}

// 2. Closed-form regime boundaries.
void criterion2() {
    bool pass = true;
    for (int N = 32; N <= 200; ++N)
        if (!closed_form_check(Dimension(N))) pass = false;
    for (int N = 5; N <= 31; ++N)
        if (closed_form_check(Dimension(N))) pass = false;
    report(2, "closed form: true for 32..200, false for 5..31", pass);
}

// 3. Classical Hardy-Rellich bound only reaches N >= 22.
void criterion3() {
    CertifyControl ctl;
    ctl.bound.rel_tol = 1e-5;
    int threshold = classical_hr_threshold(Rational(7, 2), ctl);
    report(3, "classical-bound threshold equals 22", threshold == 22,
           "got " + std::to_string(threshold));
}

// 4. Bilaplacian identity, symbolically and against finite differences.
void criterion4() {
    bool pass = true;
    for (int N = 5; N <= 40; ++N) {
        LogPolynomial b = bilaplacian(make_w(Rational(2)), Dimension(N));
        LogPolynomial expected = LogPolynomial::power(
            Rational(8LL * (N - 2) * (N - 4)), Rational(-4));
        if (b != expected) pass = false;
    }

    // comparison scale uses term-wise absolute values so that symbolic
    // cancellation (e.g. harmonic terms) cannot inflate the relative error
    auto abs_eval = [](const LogPolynomial& p, long double r) {
        long double acc = 0.0L;
        for (const auto& [key, c] : p.terms()) {
            long double t = std::fabs(to_long_double(c)) *
                            std::pow(r, to_long_double(key.first));
            for (int k = 0; k < key.second; ++k) t *= std::fabs(std::log(r));
            acc += t;
        }
        return acc;
    };
    std::mt19937_64 rng(13579);
    std::uniform_real_distribution<double> rs(0.4, 0.8);
    for (int trial = 0; trial < 100 && pass; ++trial) {
        LogPolynomial p;
        for (int i = 0; i < 3; ++i)
            p.add_term(Rational(1 + static_cast<long long>(rng() % 6)),
                       Rational(static_cast<long long>(rng() % 7) - 3,
                                1 + static_cast<long long>(rng() % 2)),
                       static_cast<int>(rng() % 2));
        int N = 5 + static_cast<int>(rng() % 30);
        LogPolynomial lap = laplacian(p, Dimension(N));
        long double r = rs(rng);
        long double h = 3e-5L;
        long double fp = p.eval_ld(r + h), fm = p.eval_ld(r - h), f0 = p.eval_ld(r);
        long double fd = (fp - 2.0L * f0 + fm) / (h * h) +
                         (N - 1) / r * (fp - fm) / (2.0L * h);
        long double sym = lap.eval_ld(r);
        LogPolynomial p3 = p.derivative().derivative().derivative();
        long double scale = 1.0L + abs_eval(lap, r) + abs_eval(p, r) +
                            abs_eval(p3.derivative(), r) +
                            (N - 1) / r * abs_eval(p3, r);
        if (std::fabs(static_cast<double>((fd - sym) / scale)) >= 1e-6) pass = false;
    }
    report(4, "bilaplacian identity and finite-difference oracle", pass);
}

// 5. Boundary conditions of w_m hold exactly in rational arithmetic.
void criterion5() {
    bool pass = true;
    for (auto m : {Rational(2), Rational(7, 2), Rational(5), Rational(10)}) {
        LogPolynomial w = make_w(m);
        LogPolynomial dw = w.derivative();
        Rational w1(0), dw1(0);
        for (const auto& [key, c] : w.terms())
            if (key.second == 0) w1 += c;
        for (const auto& [key, c] : dw.terms())
            if (key.second == 0) dw1 += c;
        if (w1 != Rational(0) || dw1 != Rational(0)) pass = false;
    }
    report(5, "w_m(1) = w_m'(1) = 0 exactly", pass);
}

// 6. Hardy-Rellich structure for N = 5..40.
void criterion6() {
    CertifyControl ctl;
    ctl.bound.rel_tol = 1e-5;
    bool pass = true;
    for (int N = 5; N <= 40; ++N) {
        Dimension dim(N);
        LogPolynomial phi_id = -laplacian(make_phi(dim), dim);
        LogPolynomial rhs = LogPolynomial::power(
            Rational(static_cast<long long>(N - 2) * (N - 2), 4), Rational(-N - 2, 2));
        if (phi_id != rhs) pass = false;
        if (check_bessel_supersolution(dim, ctl).status != CertStatus::Certified)
            pass = false;
        // hr1 >= hr2: cleared difference is (9/10) A r^{N/2-1}
        LogPolynomial diff = Rational(9, 10) * LogPolynomial::power(
            weights::hr1_first_constant(dim), Rational(N - 2, 2));
        auto f = [&](const Interval& r) { return diff.eval(r); };
        Certificate dom = certify_sign(f, Interval(1e-6, 1.0 - 1e-6),
                                       SignClaim::NonNegative, "hr1 >= hr2", ctl);
        if (dom.status != CertStatus::Certified) pass = false;
        if (Rational((N - 2) * (N - 2)) + Rational(4 * (N - 1)) !=
            Rational(static_cast<long long>(N) * N))
            pass = false;
    }
    report(6, "phi identity, psi super-solution, hr1 >= hr2", pass);
}

// 7. Branch consistency for N in {13, 20, 31}.
void criterion7() {
    CertifyControl ctl;
    ctl.bound.rel_tol = 1e-4;
    bool pass = true;
    std::string detail;
    for (int N : {13, 20, 31}) {
        branch::ContinuationResult res = branch::continue_branch(N);
        BoundEnclosure S = lambda_prime_enclosure(Dimension(N), Rational(7, 2), ctl);
        bool fold_ok = !res.stalled && res.lambda_star > 0.0 &&
                       res.lambda_star < S.value.lo();

        // pointwise monotone in lambda on a fixed grid below the fold
        std::vector<double> radii = {0.2, 0.4, 0.6, 0.8};
        branch::ShootControl sctl;
        std::vector<double> lo_samples, hi_samples;
        double lam_lo = 0.2 * res.lambda_star, lam_hi = 0.5 * res.lambda_star;
        branch::BranchPoint plo = branch::shoot(N, lam_lo, sctl);
        branch::BranchPoint phi_pt = branch::shoot(N, lam_hi, sctl);
        branch::integrate(N, lam_lo, plo.u0, plo.u2_0, sctl.integ, &radii, &lo_samples);
        branch::integrate(N, lam_hi, phi_pt.u0, phi_pt.u2_0, sctl.integ, &radii,
                          &hi_samples);
        bool mono_ok = true;
        for (std::size_t i = 0; i < radii.size(); ++i)
            if (hi_samples[i] < lo_samples[i] - 1e-9) mono_ok = false;

        branch::RadialState trivial = branch::integrate(N, 0.0, 0.0, 0.0);
        bool zero_ok = std::fabs(trivial.u) < 1e-13 && std::fabs(trivial.u1) < 1e-13;

        branch::ContinuationControl fine;
        fine.shoot.integ.abs_tol = 5e-14;
        fine.shoot.integ.rel_tol = 5e-12;
        branch::ContinuationResult res2 = branch::continue_branch(N, fine);
        bool stable_ok = !res2.stalled &&
                         std::fabs(res2.lambda_star - res.lambda_star) /
                                 res.lambda_star < 1e-3;

        if (!(fold_ok && mono_ok && zero_ok && stable_ok)) {
            pass = false;
            detail += "N=" + std::to_string(N) + " ";
        }
    }
    report(7, "branch fold below certified bound; monotone branch", pass, detail);
}

// 8. Interval soundness, duality, determinism.
void criterion8() {
    bool pass = true;

    std::mt19937_64 rng(1123581321);
    std::uniform_real_distribution<double> val(-30.0, 30.0);
    std::uniform_real_distribution<double> wid(0.0, 1.0);
    std::uniform_real_distribution<double> t01(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        double alo = val(rng), blo = val(rng);
        Interval a(alo, alo + wid(rng));
        Interval b(blo, blo + wid(rng));
        long double x = a.lo() + static_cast<long double>(t01(rng)) * (a.hi() - a.lo());
        long double y = b.lo() + static_cast<long double>(t01(rng)) * (b.hi() - b.lo());
        auto in = [](long double v, const Interval& iv) {
            return static_cast<long double>(iv.lo()) <= v &&
                   v <= static_cast<long double>(iv.hi());
        };
        if (!in(x + y, a + b) || !in(x * y, a * b) || !in(x - y, a - b)) pass = false;
        if (!b.contains_zero() && !in(x / y, a / b)) pass = false;
    }

    auto f = [](const Interval& r) { return mul(r, sub(Interval(1.0), r)); };
    BoundControl ctl;
    ctl.rel_tol = 1e-8;
    BoundEnclosure s = certified_sup(f, Interval(0.0, 1.0), ctl);
    auto g = [&f](const Interval& r) { return neg(f(r)); };
    BoundEnclosure i = certified_inf(g, Interval(0.0, 1.0), ctl);
    if (std::fabs(s.value.hi() + i.value.lo()) > 2.0 * ctl.rel_tol) pass = false;

    Dimension dim(13);
    CertifyControl cctl;
    Certificate c1 = check_cond1(dim, Rational(7, 2), 2525.0, cctl);
    Certificate c2 = check_cond1(dim, Rational(7, 2), 2525.0, cctl);
    if (c1.status != c2.status || c1.subdivisions != c2.subdivisions ||
        c1.max_gap != c2.max_gap)
        pass = false;

    report(8, "interval soundness, duality, determinism", pass);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
