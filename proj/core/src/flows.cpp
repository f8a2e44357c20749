#include "g2flow/flows.hpp"

#include <cmath>

#include "g2flow/spectral.hpp"

namespace g2flow {

namespace {

Profile chi_uu_profile(const PositiveProfile& u, const WeightFn& chi) {
    std::vector<double> v(u.n());
    for (std::uint32_t k = 0; k < u.n(); ++k) v[k] = chi.chi_uu(u[k]);
    return Profile(u.grid(), std::move(v));
}

void require_concave_on_range(const PositiveProfile& u, const WeightFn& chi) {
    if (!chi.concave())
        throw std::invalid_argument("WeightFn '" + chi.name() + "' is not concave; flow requires a concave weight");
    (void)u;
}

Profile rhs_raw(const Profile& u, const WeightFn& chi) {
    std::vector<double> cv(u.n());
    for (std::uint32_t k = 0; k < u.n(); ++k) cv[k] = chi.chi_uu(u[k]);
    const Profile c(u.grid(), std::move(cv));
    return -derivative(c * derivative(u) * u);
}

}  // namespace

Profile chi_flow_rhs(const PositiveProfile& u, const WeightFn& chi) { return rhs_raw(u.base(), chi); }

Profile flow_tau(const PositiveProfile& u, const WeightFn& chi) {
    return chi_uu_profile(u, chi) * derivative(u.base()) * u.base();
}

double energy_E(const PositiveProfile& u, const WeightFn& chi) {
    const Profile t = flow_tau(u, chi);
    return integrate(t * t / u.base());
}

double entropy_F(const PositiveProfile& u, const EtaFn& eta) {
    double s = 0.0;
    for (std::uint32_t k = 0; k < u.n(); ++k) s += eta.value(u[k]);
    return s / u.n();
}

namespace {

double stable_dt(const Profile& u, const WeightFn& chi, double cfl, double dt_max) {
    double worst = 0.0;
    for (std::uint32_t k = 0; k < u.n(); ++k) worst = std::max(worst, std::abs(chi.chi_uu(u[k]) * u[k]));
    if (worst == 0.0) return dt_max;  // linear weight: flow is zero
    const double n2 = static_cast<double>(u.n()) * static_cast<double>(u.n());
    return std::min(dt_max, cfl / (worst * n2));
}

Profile rk4_flow_step(const Profile& u, double dt, const WeightFn& chi) {
    const Profile k1 = rhs_raw(u, chi);
    const Profile k2 = rhs_raw(u + 0.5 * dt * k1, chi);
    const Profile k3 = rhs_raw(u + 0.5 * dt * k2, chi);
    const Profile k4 = rhs_raw(u + dt * k3, chi);
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

FlowState make_state(double t, const Profile& u, const WeightFn& chi, const EtaFn& eta) {
    const PositiveProfile up(u);
    return FlowState{t, u, vol_chi(up, chi), energy_E(up, chi), entropy_F(up, eta), u.min(), u.max()};
}

}  // namespace

std::vector<FlowState> flow_run(const PositiveProfile& u0, const WeightFn& chi, const FlowOptions& opt) {
    if (opt.require_concave) require_concave_on_range(u0, chi);
    std::vector<FlowState> out;
    Profile u = u0.base();
    double t = 0.0;
    const double mass0 = integrate(u);
    const double store_every = std::max(opt.t_final / static_cast<double>(opt.max_stored), 0.0);
    double next_store = 0.0;
    while (true) {
        if (t >= next_store - 1e-15) {
            out.push_back(make_state(t, u, chi, opt.eta));
            next_store = t + store_every;
        }
        if (t >= opt.t_final - 1e-15) break;
        double dt = stable_dt(u, chi, opt.cfl, opt.dt_max);
        dt = std::min(dt, opt.t_final - t);
        if (dt < 1e-12) throw StiffnessAbort("flow_run: time step underflow at t = " + std::to_string(t));
        u = rk4_flow_step(u, dt, chi);
        t += dt;
        if (u.min() < kPositivityFloor)
            throw PositivityLost("flow_run: min(u) = " + std::to_string(u.min()) + " at t = " + std::to_string(t));
        if (std::abs(integrate(u) - mass0) > 1e-9)
            throw NumericalFailure("flow_run: mass drift exceeded 1e-9 at t = " + std::to_string(t));
    }
    if (out.empty() || out.back().t < opt.t_final - 1e-15) out.push_back(make_state(t, u, chi, opt.eta));
    return out;
}

namespace {

// fixed-step flow used by the finite-difference experiments so that both
// runs land on exactly the same sample times
std::vector<Profile> flow_fixed(const Profile& u0, const WeightFn& chi, double dt, int nsteps) {
    std::vector<Profile> out;
    out.reserve(static_cast<std::size_t>(nsteps) + 1);
    Profile u = u0;
    out.push_back(u);
    for (int k = 0; k < nsteps; ++k) {
        u = rk4_flow_step(u, dt, chi);
        if (u.min() < kPositivityFloor) throw PositivityLost("contraction flow: positivity lost");
        out.push_back(u);
    }
    return out;
}

double gnorm2(const Profile& u, const Profile& w) {
    const PositiveProfile up(u);
    const TangentProfile wt(w, 1e-6);
    const Profile Qw = canonical_Q(wt, up);
    return integrate(Qw * Qw / u);
}

}  // namespace

ContractionReport length_contraction_experiment(const PositiveProfile& u0, const TangentProfile& v, double eps,
                                                const WeightFn& chi, double t_final, int samples) {
    require_concave_on_range(u0, chi);
    require_same_grid(u0.base(), v.base());
    // step so that sample times are multiples of dt
    const double dt0 = 0.5 * stable_dt(u0.base(), chi, 0.2, t_final / 16.0);
    const int steps_per_sample = std::max(2, static_cast<int>(std::ceil(t_final / (samples * dt0))));
    const double dt = t_final / (samples * steps_per_sample);
    const int nsteps = samples * steps_per_sample;

    const Profile u0p = u0.base();
    Profile u0e = u0p + eps * v.base();
    const auto a = flow_fixed(u0p, chi, dt, nsteps);
    const auto b = flow_fixed(u0e, chi, dt, nsteps);

    ContractionReport rep{{}, 0.0, -1e300};
    for (int s = 1; s <= samples; ++s) {
        const std::size_t i = static_cast<std::size_t>(s * steps_per_sample);
        const Profile us = (b[i] - a[i]) * (1.0 / eps);
        const PositiveProfile ui(a[i]);
        const TangentProfile ust(us, 1e-6);
        const Profile K = transport_K(ust, ui);
        double formula = 0.0;
        {
            Profile dens = K * K;
            for (std::uint32_t k = 0; k < dens.n(); ++k) dens[k] *= chi.chi_uu(ui[k]);
            formula = 2.0 * integrate(dens);
        }
        // centered 4th-order finite difference of g(t) = ||u_s||_G^2
        const auto g_at = [&](std::size_t idx) { return gnorm2(a[idx], (b[idx] - a[idx]) * (1.0 / eps)); };
        double fd;
        if (i >= 2 && i + 2 < a.size()) {
            fd = (-g_at(i + 2) + 8.0 * g_at(i + 1) - 8.0 * g_at(i - 1) + g_at(i - 2)) / (12.0 * dt);
        } else if (i + 1 < a.size()) {
            fd = (g_at(i + 1) - g_at(i - 1)) / (2.0 * dt);
        } else {
            fd = (g_at(i) - g_at(i - 1)) / dt;
        }
        const double denom = std::max(std::abs(formula), 1e-300);
        const double rel = std::abs(fd - formula) / denom;
        rep.samples.push_back({static_cast<double>(s) * t_final / samples, formula, fd, rel});
        rep.max_rel_err = std::max(rep.max_rel_err, rel);
        rep.max_formula = std::max(rep.max_formula, formula);
    }
    return rep;
}

EnergyDecayReport energy_decay_check(const PositiveProfile& u0, const WeightFn& chi, double t_final, int samples) {
    require_concave_on_range(u0, chi);
    const double dt0 = 0.5 * stable_dt(u0.base(), chi, 0.2, t_final / 16.0);
    const int steps_per_sample = std::max(2, static_cast<int>(std::ceil(t_final / (samples * dt0))));
    const double dt = t_final / (samples * steps_per_sample);
    const int nsteps = samples * steps_per_sample;
    const auto traj = flow_fixed(u0.base(), chi, dt, nsteps);

    EnergyDecayReport rep{{}, true, 0.0};
    double prev = -1e300;
    bool have_prev = false;
    for (int s = 0; s <= samples; ++s) {
        const std::size_t i = static_cast<std::size_t>(s) * static_cast<std::size_t>(steps_per_sample);
        const PositiveProfile ui(traj[i]);
        const double E = energy_E(ui, chi);
        if (have_prev && E > prev + 1e-10) rep.monotone_nonincreasing = false;
        prev = E;
        have_prev = true;
        double fd = 0.0, formula = 0.0, rel = 0.0;
        if (i >= 2 && i + 2 < traj.size()) {
            const auto E_at = [&](std::size_t idx) { return energy_E(PositiveProfile(traj[idx]), chi); };
            fd = (-E_at(i + 2) + 8.0 * E_at(i + 1) - 8.0 * E_at(i - 1) + E_at(i - 2)) / (12.0 * dt);
            const Profile ut = rhs_raw(traj[i], chi);
            const TangentProfile utt(ut, 1e-8);
            const Profile K = transport_K(utt, ui);
            Profile dens = K * K;
            for (std::uint32_t k = 0; k < dens.n(); ++k) dens[k] *= chi.chi_uu(ui[k]);
            formula = 2.0 * integrate(dens);
            rel = std::abs(fd - formula) / std::max(std::abs(formula), 1e-300);
            rep.max_rel_err = std::max(rep.max_rel_err, rel);
        }
        rep.samples.push_back({static_cast<double>(s) * t_final / samples, E, fd, formula});
    }
    return rep;
}

}  // namespace g2flow
