#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>
#include <algorithm>

#include <boost/numeric/odeint.hpp>

namespace bihar::branch {

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Solution data at one radius: u and its first three derivatives.
struct RadialState {
    double r;
    double u;
    double u1;
    double u2;
    double u3;
};

/// One accepted point on the minimal branch.
struct BranchPoint {
    double lambda;
    double u0;      // center value u(0)
    double u2_0;    // center second derivative u''(0)
    double sup_norm;
    double residual; // boundary defect max(|u(1)|, |u'(1)|)
};

struct IntegrationControl {
    double eps0 = 1e-6;     // series start radius
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double blowup_u = 500.0; // e^u overflows well before this matters
};

namespace detail {

// First-order system in (u, p, v, q) with p = u', v = Delta u, q = v'.
// This splitting avoids the catastrophic cancellation of the direct
// fourth-order form near the origin.
struct RadialSystem {
    int N;
    double lambda;

    void operator()(const std::array<double, 4>& y, std::array<double, 4>& dy,
                    double r) const {
        double c = static_cast<double>(N - 1) / r;
        dy[0] = y[1];
        dy[1] = y[2] - c * y[1];
        dy[2] = y[3];
        dy[3] = lambda * std::exp(y[0]) - c * y[3];
    }
};

// Series start: u = u0 + c2 r^2 + c4 r^4 + O(r^6), c2 = u2_0/2,
// c4 = lambda e^{u0} / (8N(N+2)); v = Delta u = 2N c2 + 4(N+2) c4 r^2.
inline std::array<double, 4> series_state(int N, double lambda, double u0, double u2_0,
                                          double eps) {
    double c2 = 0.5 * u2_0;
    double c4 = lambda * std::exp(u0) / (8.0 * N * (N + 2));
    std::array<double, 4> y;
    y[0] = u0 + c2 * eps * eps + c4 * eps * eps * eps * eps;
    y[1] = 2.0 * c2 * eps + 4.0 * c4 * eps * eps * eps;
    y[2] = 2.0 * N * c2 + 4.0 * (N + 2) * c4 * eps * eps;
    y[3] = 8.0 * (N + 2) * c4 * eps;
    return y;
}

} // namespace detail

/// Integrates from the series start at eps0 to r = 1 and reports the state
/// there. Throws DivergenceError if the solution blows up en route.
/// Optionally samples u at the given radii (which must be increasing).
inline RadialState integrate(int N, double lambda, double u0, double u2_0,
                             const IntegrationControl& ctl = {},
                             const std::vector<double>* sample_at = nullptr,
                             std::vector<double>* samples_out = nullptr) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 4>;

    detail::RadialSystem sys{N, lambda};
    State y = detail::series_state(N, lambda, u0, u2_0, ctl.eps0);

    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(
        ctl.abs_tol, ctl.rel_tol);

    std::vector<double> checkpoints;
    if (sample_at)
        for (double r : *sample_at)
            if (r > ctl.eps0 && r < 1.0) checkpoints.push_back(r);
    checkpoints.push_back(1.0);

    double r = ctl.eps0;
    if (samples_out) samples_out->clear();
    for (double target : checkpoints) {
        double dt = std::min(r * 0.1, target - r);
        std::size_t steps = 0;
        while (r < target) {
            if (!std::isfinite(y[0]) || std::fabs(y[0]) > ctl.blowup_u)
                throw DivergenceError("integrate: blow-up before r=1");
            if (r + dt > target) dt = target - r;
            auto res = stepper.try_step(sys, y, r, dt);
            if (res == odeint::fail) {
                if (dt < 1e-15)
                    throw DivergenceError("integrate: step size underflow");
            }
            if (++steps > 2'000'000)
                throw DivergenceError("integrate: step budget exhausted");
        }
        if (samples_out && target < 1.0) samples_out->push_back(y[0]);
    }

    // recover u'' and u''' from (u, p, v, q) at r = 1
    double p = y[1], v = y[2], q = y[3];
    double upp = v - (N - 1) * p;
    double uppp = q - (N - 1) * (upp - p);
    return RadialState{1.0, y[0], p, upp, uppp};
}

struct ShootControl {
    IntegrationControl integ;
    double newton_tol = 1e-10;
    int newton_max_iter = 40;
    double accept_residual = 1e-8;
};

namespace detail {

// One Newton solve of F(x) = (u(1), u'(1)) = 0 in the two unknowns given by
// `unknowns`; `fixed` supplies the remaining parameter. mode 0: unknowns are
// (u0, u2_0) at fixed lambda. mode 1: unknowns are (lambda, u2_0) at fixed u0.
inline bool newton2(int N, int mode, double fixed, double& x0, double& x1,
                    const ShootControl& ctl, double* out_residual) {
    auto eval = [&](double a, double b, double& f0, double& f1) {
        double lambda = mode == 0 ? fixed : a;
        double u0 = mode == 0 ? a : fixed;
        double u2_0 = b;
        RadialState s = integrate(N, lambda, u0, u2_0, ctl.integ);
        f0 = s.u;
        f1 = s.u1;
    };
    double f0, f1;
    for (int it = 0; it < ctl.newton_max_iter; ++it) {
        eval(x0, x1, f0, f1);
        double res = std::max(std::fabs(f0), std::fabs(f1));
        // the boundary defect cannot be driven below the integration error,
        // which scales with the magnitude of the solved state
        double floor = std::max(ctl.newton_tol,
                                50.0 * ctl.integ.rel_tol * (1.0 + std::fabs(x1)));
        if (res <= floor) {
            if (out_residual) *out_residual = res;
            return true;
        }
        double h0 = 1e-7 * (1.0 + std::fabs(x0));
        double h1 = 1e-7 * (1.0 + std::fabs(x1));
        double g0, g1, k0, k1;
        eval(x0 + h0, x1, g0, g1);
        eval(x0, x1 + h1, k0, k1);
        double j00 = (g0 - f0) / h0, j01 = (k0 - f0) / h1;
        double j10 = (g1 - f1) / h0, j11 = (k1 - f1) / h1;
        double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::fabs(det) < 1e-300) return false;
        double dx0 = (f0 * j11 - f1 * j01) / det;
        double dx1 = (j00 * f1 - j10 * f0) / det;
        // damped step if the full step overshoots badly
        double scale = 1.0;
        double step = std::max(std::fabs(dx0), std::fabs(dx1));
        if (step > 10.0) scale = 10.0 / step;
        x0 -= scale * dx0;
        x1 -= scale * dx1;
    }
    eval(x0, x1, f0, f1);
    double res = std::max(std::fabs(f0), std::fabs(f1));
    if (out_residual) *out_residual = res;
    double accept = std::max(ctl.accept_residual,
                             50.0 * ctl.integ.rel_tol * (1.0 + std::fabs(x1)));
    return res <= accept;
}

} // namespace detail

/// Minimal solution at the given lambda by shooting on (u0, u''(0)), reached
/// by continuation from the trivial solution at lambda = 0.
inline BranchPoint shoot(int N, double lambda, const ShootControl& ctl = {}) {
    if (lambda < 0.0) throw std::invalid_argument("shoot: lambda must be >= 0");
    if (lambda == 0.0) return BranchPoint{0.0, 0.0, 0.0, 0.0, 0.0};
    double u0 = 0.0, u2_0 = 0.0;
    int ramp_steps = std::max(8, static_cast<int>(std::ceil(lambda / 25.0)));
    ramp_steps = std::min(ramp_steps, 200);
    for (int i = 1; i <= ramp_steps; ++i) {
        double lam = lambda * i / ramp_steps;
        double residual = 0.0;
        if (!detail::newton2(N, 0, lam, u0, u2_0, ctl, &residual))
            throw NoConvergenceError("shoot: Newton stalled at lambda=" +
                                     std::to_string(lam));
    }
    double residual = 0.0;
    detail::newton2(N, 0, lambda, u0, u2_0, ctl, &residual);
    RadialState end = integrate(N, lambda, u0, u2_0, ctl.integ);
    (void)end;
    return BranchPoint{lambda, u0, u2_0, u0, residual};
}

struct ContinuationControl {
    ShootControl shoot{.integ = {.abs_tol = 1e-13, .rel_tol = 1e-11}};
    double du0 = 0.25;         // initial continuation step in u(0)
    double u0_max = 60.0;
    double fold_rel_tol = 1e-4;
    int max_points = 2000;
    int past_fold_points = 5;  // keep stepping to show the fold was passed
    int flat_window = 8;       // points used to detect a flattened branch
};

struct ContinuationResult {
    std::vector<BranchPoint> points;
    double lambda_star = 0.0;
    BranchPoint fold{};
    bool stalled = false;
};

/// Walks the branch parametrized by u(0), solving (lambda, u''(0)) at each
/// step. lambda is a smooth function of u(0) through the fold, so the same
/// parametrization carries past the turning point; the fold is then located
/// by golden-section refinement of max lambda(u0).
inline ContinuationResult continue_branch(int N, const ContinuationControl& ctl = {}) {
    ContinuationResult out;
    out.points.push_back(BranchPoint{0.0, 0.0, 0.0, 0.0, 0.0});

    double lambda = 0.0, u2_0 = 0.0;
    double u0 = 0.0;
    double du = ctl.du0;
    int past_fold = 0;
    double prev_lambda = 0.0;

    auto solve_at = [&](double target_u0, double& lam, double& u2) -> bool {
        double residual = 0.0;
        if (!detail::newton2(N, 1, target_u0, lam, u2, ctl.shoot, &residual)) return false;
        RadialState s = integrate(N, lam, target_u0, u2, ctl.shoot.integ);
        out.points.push_back(BranchPoint{
            lam, target_u0, u2, target_u0,
            std::max(std::fabs(s.u), std::fabs(s.u1))});
        return true;
    };

    while (static_cast<int>(out.points.size()) < ctl.max_points && u0 < ctl.u0_max) {
        double next_u0 = u0 + du;
        // secant predictor from the last two points
        double lam_guess = lambda, u2_guess = u2_0;
        if (out.points.size() >= 2) {
            const auto& a = out.points[out.points.size() - 2];
            const auto& b = out.points.back();
            if (b.u0 > a.u0) {
                double t = (next_u0 - b.u0) / (b.u0 - a.u0);
                lam_guess = b.lambda + t * (b.lambda - a.lambda);
                u2_guess = b.u2_0 + t * (b.u2_0 - a.u2_0);
            }
        }
        double lam = lam_guess, u2 = u2_guess;
        bool ok = false;
        try {
            ok = solve_at(next_u0, lam, u2);
        } catch (const DivergenceError&) {
            ok = false;
        }
        if (!ok) {
            du *= 0.5;
            if (du < 1e-6) {
                // step underflow: a stall only if lambda is still moving;
                // a flattened branch has already delivered its limit
                bool flat = false;
                if (out.points.size() > static_cast<std::size_t>(ctl.flat_window)) {
                    const auto& old =
                        out.points[out.points.size() - 1 - ctl.flat_window];
                    flat = lambda - old.lambda >= 0.0 &&
                           lambda - old.lambda <
                               ctl.fold_rel_tol * std::fabs(lambda);
                }
                out.stalled = !flat;
                break;
            }
            continue;
        }
        prev_lambda = lambda;
        lambda = lam;
        u2_0 = u2;
        u0 = next_u0;
        du = std::min(du * 1.3, ctl.du0 * 4.0);
        if (lambda < prev_lambda && out.points.size() > 2) {
            if (++past_fold >= ctl.past_fold_points) break;
        }
        // above the critical dimension lambda(u0) climbs monotonically to its
        // limit instead of folding back; stop once the branch has flattened
        if (out.points.size() > static_cast<std::size_t>(ctl.flat_window)) {
            const auto& old =
                out.points[out.points.size() - 1 - ctl.flat_window];
            double gain = lambda - old.lambda;
            double span = u0 - old.u0;
            if (span >= 0.5 && gain >= 0.0 &&
                gain < 0.5 * ctl.fold_rel_tol * std::fabs(lambda))
                break;
        }
    }

    // fold refinement: maximize lambda(u0) over the bracketing points
    std::size_t imax = 0;
    for (std::size_t i = 0; i < out.points.size(); ++i)
        if (out.points[i].lambda > out.points[imax].lambda) imax = i;
    out.fold = out.points[imax];
    out.lambda_star = out.points[imax].lambda;

    if (imax > 0 && imax + 1 < out.points.size() && !out.stalled) {
        double a = out.points[imax - 1].u0;
        double b = out.points[imax + 1].u0;
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        auto lam_at = [&](double x) {
            double lam = out.points[imax].lambda, u2 = out.points[imax].u2_0;
            if (!detail::newton2(N, 1, x, lam, u2, ctl.shoot, nullptr))
                return -std::numeric_limits<double>::infinity();
            return lam;
        };
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = lam_at(x1), f2 = lam_at(x2);
        for (int it = 0; it < 60; ++it) {
            double best = std::max({out.lambda_star, f1, f2});
            if ((b - a) < 1e-10 ||
                (best > 0 && std::fabs(f1 - f2) < ctl.fold_rel_tol * best * 0.1))
                break;
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + phi * (b - a);
                f2 = lam_at(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - phi * (b - a);
                f1 = lam_at(x1);
            }
        }
        double refined = std::max(f1, f2);
        if (refined > out.lambda_star) {
            out.lambda_star = refined;
            double xbest = f1 > f2 ? x1 : x2;
            double lam = refined, u2 = out.points[imax].u2_0;
            detail::newton2(N, 1, xbest, lam, u2, ctl.shoot, nullptr);
            out.fold = BranchPoint{lam, xbest, u2, xbest, 0.0};
        }
    }
    return out;
}

} // namespace bihar::branch
