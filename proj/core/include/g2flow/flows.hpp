#pragma once

#include <functional>
#include <vector>

#include "g2flow/geometry.hpp"
#include "g2flow/operators.hpp"
#include "g2flow/weightfn.hpp"

namespace g2flow {

// entropy weight eta
struct EtaFn {
    std::function<double(double)> value;
    std::function<double(double)> d2;
    std::string name;

    static EtaFn ylogy() {
        return {[](double y) { return y * std::log(y); }, [](double y) { return 1.0 / y; }, "ylogy"};
    }
    static EtaFn power(double p) {
        return {[p](double y) { return std::pow(y, p); },
                [p](double y) { return p * (p - 1.0) * std::pow(y, p - 2.0); }, "power"};
    }
};

struct FlowState {
    double t;
    Profile u;
    double vol_chi;
    double energy;
    double entropy;
    double min_u;
    double max_u;
};

// chi-flow right-hand side u_t = -(chi_uu(u) u' u)'; exactly zero-mean.
// Non-concave chi (porous-medium regime) is allowed here for exploration.
Profile chi_flow_rhs(const PositiveProfile& u, const WeightFn& chi);

// tau~ = chi_uu(u) u' u  (Q(u_t) = -tau~ along the flow)
Profile flow_tau(const PositiveProfile& u, const WeightFn& chi);

// energy E(u) = \int u^{-1} tau~^2  (= dVol_chi/dt along the flow)
double energy_E(const PositiveProfile& u, const WeightFn& chi);

// entropy F(u) = \int eta(u)
double entropy_F(const PositiveProfile& u, const EtaFn& eta);

struct FlowOptions {
    double t_final = 0.1;
    double dt_max = 1e-3;        // also the output interval upper bound
    double cfl = 0.2;            // dt <= cfl / (max|chi_uu u| n^2)
    std::size_t max_stored = 4096;
    EtaFn eta = EtaFn::ylogy();
    bool require_concave = true;
};

// Explicit RK4 chi-flow run with a diffusive CFL step bound.
// Throws PositivityLost / StiffnessAbort; mass is conserved exactly
// (the right-hand side is an exact x-derivative).
std::vector<FlowState> flow_run(const PositiveProfile& u0, const WeightFn& chi, const FlowOptions& opt);

// ---- contraction diagnostics -------------------------------------------------

struct ContractionSample {
    double t;
    double formula;  // 2 \int chi_uu K(u_s)^2
    double fd;       // centered finite difference of G(u_s, u_s)
    double rel_err;
};

struct ContractionReport {
    std::vector<ContractionSample> samples;
    double max_rel_err;
    double max_formula;  // should be <= ~0 for concave chi
};

// Evolve u0 and u0 + eps*v under the chi flow; u_s is the one-sided
// difference quotient.  Compares d/dt ||u_s||_G^2 (finite differences in t)
// against 2 \int chi_uu K(u_s)^2.
ContractionReport length_contraction_experiment(const PositiveProfile& u0, const TangentProfile& v, double eps,
                                                const WeightFn& chi, double t_final, int samples = 5);

struct EnergyDecaySample {
    double t;
    double energy;
    double dE_fd;
    double formula;  // 2 \int chi_uu K(u_t)^2
};

struct EnergyDecayReport {
    std::vector<EnergyDecaySample> samples;
    bool monotone_nonincreasing;
    double max_rel_err;
};

// Along one flow: E(t) non-increasing and dE/dt = 2 \int chi_uu K(u_t)^2.
EnergyDecayReport energy_decay_check(const PositiveProfile& u0, const WeightFn& chi, double t_final,
                                     int samples = 10);

}  // namespace g2flow
