#include "g2flow/geometry.hpp"

#include <cmath>

#include "g2flow/spectral.hpp"

namespace g2flow {

double dirichlet_metric(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g) {
    require_same_grid(u.base(), f.base());
    require_same_grid(u.base(), g.base());
    return integrate(canonical_Q(f, u) * canonical_Q(g, u) / u.base());
}

double dirichlet_metric_cross(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g) {
    const Profile Qu = canonical_Q_u(f, u);
    return -integrate(antiderivative_L(Qu) * g.base());
}

Profile connection_U(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g) {
    const Profile Qf = canonical_Q(f, u);
    const Profile Qg = canonical_Q(g, u);
    return (f.base() * Qg + Qf * g.base()) / u.base() - Qf * Qg * derivative(u.base()) / (u.base() * u.base());
}

Profile covariant_derivative(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g,
                             const Profile& g_t) {
    return g_t - derivative(connection_U(u, f, g));
}

double sectional_curvature(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g) {
    const Profile Qf = canonical_Q(f, u);
    const Profile Qg = canonical_Q(g, u);
    const double num = integrate((f.base() * Qg - Qf * g.base()) / (u.base() * u.base()));
    return 0.75 * num * num / integrate(1.0 / u.base());
}

double hitchin_volume(const PositiveProfile& u) { return integrate(pow(u.base(), 1.0 / 3.0)); }

double vol_chi(const PositiveProfile& u, const WeightFn& chi) {
    double s = 0.0;
    for (std::uint32_t k = 0; k < u.n(); ++k) s += chi.chi(u[k]);
    return s / u.n();
}

double hessian_vol(const PositiveProfile& u, const TangentProfile& f) {
    const Profile a3u = canonical_Q(f, u) / u.base();
    const Profile d = derivative(a3u);
    return -(2.0 / 9.0) * integrate(d * d * pow(u.base(), 1.0 / 3.0));
}

VttDecomposition vtt_integrand_decomposition(const PositiveProfile& u, const TangentProfile& f) {
    const Profile a3 = canonical_Q(f, u);
    const Profile du = derivative(u.base());
    const Profile u2 = u.base() * u.base();
    const Profile main = -4.0 * (f.base() * f.base()) / u2;
    const Profile i1 = 4.0 * (f.base() * du * a3) / (u2 * u.base());
    const Profile i2 = i1 - 4.0 * (du * du * a3 * a3) / (u2 * u2);
    return {main, i1, i2};
}

// ---- geodesics -------------------------------------------------------------

std::pair<Profile, Profile> geodesic_rhs(const PositiveProfile& u, const TangentProfile& f) {
    const Profile Qf = canonical_Q(f, u);
    const Profile ut = Qf * f.base() / u.base() +
                       0.5 * (u.base() * derivative((Qf * Qf) / (u.base() * u.base())));
    return {f.base(), derivative(ut)};
}

namespace {

struct UQState {
    Profile u, q;
};

// continuity + Burgers right-hand side
UQState uq_rhs(const UQState& s) {
    return {-derivative(s.q * s.u), -(s.q * derivative(s.q))};
}

UQState rk4_step(const UQState& s, double dt) {
    const UQState k1 = uq_rhs(s);
    const UQState s2{s.u + 0.5 * dt * k1.u, s.q + 0.5 * dt * k1.q};
    const UQState k2 = uq_rhs(s2);
    const UQState s3{s.u + 0.5 * dt * k2.u, s.q + 0.5 * dt * k2.q};
    const UQState k3 = uq_rhs(s3);
    const UQState s4{s.u + dt * k3.u, s.q + dt * k3.q};
    const UQState k4 = uq_rhs(s4);
    return {s.u + (dt / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            s.q + (dt / 6.0) * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q)};
}

GeodesicPath integrate_uq(const Profile& u0, const Profile& q0, double t_final, double dt) {
    if (t_final < 0.0 || dt <= 0.0) throw std::invalid_argument("geodesic: need t_final >= 0, dt > 0");
    // pre-shock horizon from the initial characteristics, with safety 0.9
    const Profile dq0 = derivative(q0);
    double worst = 0.0;  // max of -dq0
    for (std::uint32_t k = 0; k < q0.n(); ++k) worst = std::max(worst, -dq0[k]);
    if (worst > 0.0 && t_final > 0.9 / worst)
        throw ShockDetected("geodesic_ivp: characteristics cross at t* = " + std::to_string(1.0 / worst) +
                            "; requested horizon " + std::to_string(t_final) + " exceeds 0.9 t*");
    GeodesicPath path;
    path.dt = dt;
    path.shock_margin = 1.0 - t_final * worst;

    UQState s{u0, q0};
    double t = 0.0;
    const auto store = [&](double tt, const UQState& st) {
        path.steps.push_back(GeodesicStep{tt, st.u, -derivative(st.q * st.u), st.q});
    };
    store(0.0, s);
    const double mass0 = integrate(u0);
    while (t < t_final - 1e-12) {
        const double step = std::min(dt, t_final - t);
        s = rk4_step(s, step);
        t += step;
        if (s.u.min() < kPositivityFloor)
            throw PositivityLost("geodesic_ivp: min(u) = " + std::to_string(s.u.min()) + " at t = " +
                                 std::to_string(t));
        store(t, s);
    }
    if (std::abs(integrate(s.u) - mass0) > 1e-9)
        throw NumericalFailure("geodesic_ivp: mass drift exceeded 1e-9");
    return path;
}

}  // namespace

GeodesicPath geodesic_ivp(const PositiveProfile& u0, const TangentProfile& f0, double t_final, double dt) {
    require_same_grid(u0.base(), f0.base());
    const Profile q0 = -canonical_Q_u(f0, u0);
    GeodesicPath p = integrate_uq(u0.base(), q0, t_final, dt);
    p.route = GeodesicPath::Route::CanonicalIvp;
    return p;
}

GeodesicPath geodesic_ivp_velocity(const PositiveProfile& u0, const Profile& q0, double t_final, double dt) {
    require_same_grid(u0.base(), q0);
    GeodesicPath p = integrate_uq(u0.base(), q0, t_final, dt);
    p.route = GeodesicPath::Route::CanonicalIvp;
    return p;
}

std::optional<GeodesicPath> transport_solve(const PositiveProfile& u0, const PositiveProfile& u1, int steps,
                                            double tol) {
    require_same_grid(u0.base(), u1.base());
    const CorrelationPeak peak = best_cyclic_shift(u0.base(), u1.base());
    if (peak.score < 1.0 - tol) return std::nullopt;
    const double C = peak.shift;
    GeodesicPath path;
    path.route = GeodesicPath::Route::Rotation;
    path.rotation_shift = C;
    path.dt = 1.0 / (steps - 1);
    const Profile q = Profile::constant(u0.grid(), -C);
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / (steps - 1);
        Profile ut = fourier_shift(u0.base(), C * t);
        Profile f = C * derivative(ut);
        path.steps.push_back(GeodesicStep{t, std::move(ut), std::move(f), q});
    }
    return path;
}

// ---- circular optimal transport ------------------------------------------------

namespace {

// lifted CDF: G(x) = x + P(x), P periodic with P(0) = 0
struct Cdf {
    Profile periodic;  // P on the grid
    double p0;

    explicit Cdf(const PositiveProfile& u) : periodic(make_periodic(u)), p0(periodic[0]) {}
    static Profile make_periodic(const PositiveProfile& u) {
        Profile shifted = u.base();
        for (std::uint32_t k = 0; k < shifted.n(); ++k) shifted[k] -= 1.0;  // unit mass assumed
        return antiderivative_L(shifted, 1e-9);
    }
    double eval(double x) const {
        // G(x) = x + P(x) - P(0)
        return x + fourier_eval(periodic, x - std::floor(x)) - p0;
    }
    // solve G(y) = s by Newton with bisection safeguard; G' = u > 0
    double inverse(const PositiveProfile& u, double s) const {
        const double base = std::floor(s);
        const double sf = s - base;
        double lo = 0.0, hi = 1.0, y = sf;
        for (int it = 0; it < 60; ++it) {
            const double g = eval(y) - sf;
            if (g > 0)
                hi = y;
            else
                lo = y;
            const double dg = fourier_eval(u.base(), y - std::floor(y));
            double ystep = y - g / dg;
            if (!(ystep > lo && ystep < hi)) ystep = 0.5 * (lo + hi);
            if (std::abs(ystep - y) < 1e-15) {
                y = ystep;
                break;
            }
            y = ystep;
        }
        return y + base;
    }
};

}  // namespace

GeodesicPath geodesic_bvp(const PositiveProfile& u0, const PositiveProfile& u1, int steps) {
    require_same_grid(u0.base(), u1.base());
    if (steps < 3) throw std::invalid_argument("geodesic_bvp: need at least 3 steps");
    if (std::abs(u0.mass() - 1.0) > 1e-9 || std::abs(u1.mass() - 1.0) > 1e-9)
        throw MassMismatch("geodesic_bvp: endpoints must have unit mass (" + std::to_string(u0.mass()) + ", " +
                           std::to_string(u1.mass()) + ")");
    if (u0.base().min() < kPositivityFloor || u1.base().min() < kPositivityFloor)
        throw DegenerateDensity("geodesic_bvp: density below positivity floor");

    if (auto rot = transport_solve(u0, u1, steps)) return *std::move(rot);

    const Grid grid = u0.grid();
    const std::uint32_t n = grid.n();
    const Cdf G0(u0), G1(u1);

    // displacement field at shift alpha: D_alpha(x) = G1^{-1}(G0(x) - alpha) - x
    const auto displacement = [&](double alpha) {
        std::vector<double> d(n);
        for (std::uint32_t k = 0; k < n; ++k) {
            const double x = grid.x(k);
            d[k] = G1.inverse(u1, G0.eval(x) - alpha) - x;
        }
        // wind into (-1/2, 1/2] on average: the branch is fixed by alpha itself
        return Profile(grid, std::move(d));
    };
    const auto mean_disp = [&](double alpha) { return integrate(displacement(alpha)); };

    // mean displacement is strictly decreasing in alpha; bracket the root
    double lo = -1.0, hi = 1.0;
    while (mean_disp(lo) < 0.0) lo -= 1.0;
    while (mean_disp(hi) > 0.0) hi += 1.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_disp(mid) > 0.0 ? lo : hi) = mid;
    }
    const double alpha = 0.5 * (lo + hi);
    const Profile D = displacement(alpha);
    const Profile Dp = derivative(D);

    GeodesicPath path;
    path.route = GeodesicPath::Route::OptimalTransport;
    path.dt = 1.0 / (steps - 1);
    path.ot_cost = integrate(D * D * u0.base());

    // resample u(t, y) on the uniform grid: X_t(x) = x + t D(x), Newton in x
    for (int kstep = 0; kstep < steps; ++kstep) {
        const double t = static_cast<double>(kstep) / (steps - 1);
        std::vector<double> uval(n), qval(n);
        double xguess = -t * fourier_eval(D, 0.0);
        for (std::uint32_t j = 0; j < n; ++j) {
            const double y = grid.x(j);
            double x = xguess;
            for (int it = 0; it < 50; ++it) {
                const double g = x + t * fourier_eval(D, x) - y;
                const double dg = 1.0 + t * fourier_eval(Dp, x);
                const double xn = x - g / dg;
                if (std::abs(xn - x) < 1e-15) {
                    x = xn;
                    break;
                }
                x = xn;
            }
            xguess = x;
            const double jac = 1.0 + t * fourier_eval(Dp, x);
            uval[j] = fourier_eval(u0.base(), x) / jac;
            qval[j] = fourier_eval(D, x);
        }
        Profile ut(grid, std::move(uval));
        Profile qt(grid, std::move(qval));
        Profile f = -derivative(qt * ut);
        path.steps.push_back(GeodesicStep{t, std::move(ut), std::move(f), std::move(qt)});
    }

    // endpoint sanity
    Profile endpoint_err = path.steps.back().u - u1.base();
    if (endpoint_err.sup_norm() > 1e-6)
        throw NumericalFailure("geodesic_bvp: endpoint error " + std::to_string(endpoint_err.sup_norm()));
    return path;
}

// ---- diagnostics ---------------------------------------------------------------

PathDiagnostics path_diagnostics(const GeodesicPath& path) {
    const auto& st = path.steps;
    PathDiagnostics d{0, 0, 0, 0, 0, 0, 0, 0, {}, {}};
    const double mass0 = integrate(st.front().u);
    std::vector<double> speeds;
    for (std::size_t k = 0; k < st.size(); ++k) {
        const PositiveProfile uk(st[k].u);
        const TangentProfile fk(st[k].f, 1e-8);
        d.vol_series.push_back(hitchin_volume(uk));
        d.hessian_series.push_back(hessian_vol(uk, fk));
        d.mass_drift = std::max(d.mass_drift, std::abs(integrate(st[k].u) - mass0));
        d.k_residual = std::max(d.k_residual, (st[k].f + st[k].q * derivative(st[k].u)).sup_norm());
        d.continuity_residual =
            std::max(d.continuity_residual, (st[k].f + derivative(st[k].q * st[k].u)).sup_norm());
        speeds.push_back(std::sqrt(std::max(0.0, dirichlet_metric(uk, fk, fk))));
        if (k == 0 || k + 1 == st.size()) continue;
        const double h2 = st[k + 1].t - st[k - 1].t;
        const Profile qdot = (st[k + 1].q - st[k - 1].q) * (1.0 / h2);
        const Profile udot = (st[k + 1].u - st[k - 1].u) * (1.0 / h2);
        d.burgers_residual = std::max(d.burgers_residual, (qdot + st[k].q * derivative(st[k].q)).sup_norm());
        d.fd_consistency = std::max(d.fd_consistency, (udot - st[k].f).sup_norm());
        // Hamilton-Jacobi: phi_x = q; phi_t + q^2/2 spatially constant.
        // d/dt mean(q) = 0 along Burgers, so phi_t = cumint(qdot) + x*mean(qdot)
        // with mean(qdot) ~ 0; deviation of C = phi_t + q^2/2 from its mean:
        Profile qdot0 = qdot;
        const double mq = integrate(qdot);
        for (std::uint32_t j = 0; j < qdot0.n(); ++j) qdot0[j] -= mq;
        Profile phit = antiderivative_L(qdot0, 1e-6);
        Profile c = phit + 0.5 * (st[k].q * st[k].q);
        const double cm = integrate(c);
        for (std::uint32_t j = 0; j < c.n(); ++j) c[j] -= cm;
        d.hj_residual = std::max(d.hj_residual, std::max(c.sup_norm(), std::abs(mq)));
    }
    // trapezoid Dirichlet length and per-step speed variance
    for (std::size_t k = 0; k + 1 < st.size(); ++k)
        d.dirichlet_length += 0.5 * (speeds[k] + speeds[k + 1]) * (st[k + 1].t - st[k].t);
    double ms = 0.0, m2 = 0.0;
    for (double s : speeds) {
        ms += s;
        m2 += s * s;
    }
    ms /= static_cast<double>(speeds.size());
    m2 /= static_cast<double>(speeds.size());
    d.speed_variance = std::max(0.0, m2 - ms * ms);
    return d;
}

PotentialSolve potential_solve(const PositiveProfile& u, const TangentProfile& f) {
    const Profile Qu = canonical_Q_u(f, u);
    const Profile LQu = antiderivative_L(Qu);
    const Profile u53 = pow(u.base(), 5.0 / 3.0);
    const double c2 = -integrate(u53 * LQu) / integrate(u53);
    Profile inner = LQu;
    for (std::uint32_t k = 0; k < inner.n(); ++k) inner[k] += c2;
    Profile beta03 = -(u53 * inner);
    const Profile alpha_c = canonical_Q(f, u);
    // ODE residual: [-u (u^{-5/3} beta03)']' - f
    const Profile resid =
        derivative(-(u.base() * derivative(pow(u.base(), -5.0 / 3.0) * beta03))) - f.base();
    return {std::move(beta03), alpha_c, resid.sup_norm()};
}

}  // namespace g2flow
