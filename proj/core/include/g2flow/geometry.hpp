#pragma once

#include <optional>
#include <vector>

#include "g2flow/operators.hpp"
#include "g2flow/profile.hpp"
#include "g2flow/weightfn.hpp"

namespace g2flow {

// ---- Dirichlet metric, connection, curvature --------------------------------

// G(X,Y) = \int u^{-1} Q(f) Q(g) dx
double dirichlet_metric(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g);
// cross form: -\int L[Q_u(f)] g dx (equal to the above)
double dirichlet_metric_cross(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g);

// U(f,g) = [f Q(g) + Q(f) g]/u - Q(f)Q(g) u'/u^2
Profile connection_U(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g);

// Covariant derivative of the tangent g along a path with velocity f, in
// profile variables: D_t g = g_t - U(f,g)'.  (The tangent identification
// X = -f dtheta^3^dx^{03} flips the sign of the form-level Y_t + U'.)
Profile covariant_derivative(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g,
                             const Profile& g_t);

// sectional curvature K(X,Y) = (3/4) [\int (fQ(g)-Q(f)g)/u^2]^2 / \int u^{-1}
double sectional_curvature(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g);

// ---- volume functionals ------------------------------------------------------

double hitchin_volume(const PositiveProfile& u);               // \int u^{1/3}
double vol_chi(const PositiveProfile& u, const WeightFn& chi); // \int chi(u)

// Vol_tt along the canonical geodesic: -(2/9) \int [(Q(f)/u)']^2 u^{1/3} dx
double hessian_vol(const PositiveProfile& u, const TangentProfile& f);

// pointwise pieces of 18*Vol_tt = \int (main + I1 + I2) vol_phi:
// main = -4 f^2/u^2, I1 = 4 f u' a3 / u^3, I2 = 4 f u' a3/u^3 - 4 (u')^2 a3^2/u^4,
// with a3 = Q(f); their sum equals -4 [(a3/u)']^2 pointwise.
struct VttDecomposition {
    Profile main, I1, I2;
};
VttDecomposition vtt_integrand_decomposition(const PositiveProfile& u, const TangentProfile& f);

// ---- geodesics ----------------------------------------------------------------

// One stored step of a geodesic: u, f = u_t, and the velocity representative
// q of the transport picture (u_t + (q u)_x = 0, q_t + q q_x = 0).
// Canonical paths carry q = -Q(f)/u (zero mean); rotation paths carry the
// diffeomorphism-gauge constant q.
struct GeodesicStep {
    double t;
    Profile u;
    Profile f;
    Profile q;
};

struct GeodesicPath {
    std::vector<GeodesicStep> steps;
    double dt = 0.0;
    double shock_margin = 1.0;  // min over grid and stored t of 1 + t dq0/dx
    enum class Route { CanonicalIvp, Rotation, OptimalTransport } route = Route::CanonicalIvp;
    double rotation_shift = 0.0;  // for Route::Rotation
    double ot_cost = 0.0;         // for Route::OptimalTransport: \int (T-x)^2 u0

    const GeodesicStep& front() const { return steps.front(); }
    const GeodesicStep& back() const { return steps.back(); }
};

// canonical geodesic right-hand side: du = f, df = (Utilde)' with
// Utilde = Q(f) f / u + (u/2) [Q(f)^2/u^2]'
std::pair<Profile, Profile> geodesic_rhs(const PositiveProfile& u, const TangentProfile& f);

// canonical initial-value geodesic; q0 = -Q(f0)/u0
GeodesicPath geodesic_ivp(const PositiveProfile& u0, const TangentProfile& f0, double t_final, double dt);

// initial-value geodesic from a velocity representative q0 (need not have
// zero mean; constant q0 yields the exact rigid rotation)
GeodesicPath geodesic_ivp_velocity(const PositiveProfile& u0, const Profile& q0, double t_final, double dt);

// Boundary-value geodesic between unit-mass positive profiles.  Rotation
// pairs (u1 = u0(.+C), detected by cyclic cross-correlation) return the
// constant-speed rigid rotation; otherwise the circular optimal-transport
// displacement interpolation with the shift parameter chosen so the mean
// displacement vanishes (the cost minimizer).
GeodesicPath geodesic_bvp(const PositiveProfile& u0, const PositiveProfile& u1, int steps);

// Rotation detector/solver: returns the rigid-rotation path if
// u1 = u0(.+C) within tolerance, std::nullopt otherwise ("NoRotation").
std::optional<GeodesicPath> transport_solve(const PositiveProfile& u0, const PositiveProfile& u1, int steps = 33,
                                            double tol = 1e-8);

// ---- path diagnostics ----------------------------------------------------------

struct PathDiagnostics {
    double burgers_residual;    // sup_t ||q_t + q q_x||_inf (FD in t)
    double continuity_residual; // sup_t ||f + (q u)_x||_inf
    double fd_consistency;      // sup_t ||u_t(FD) - f||_inf
    double hj_residual;         // sup_t sup_x |phi_t + q^2/2 - mean|
    double k_residual;          // sup_t ||f + q u'||_inf (path-gauge K)
    double mass_drift;          // sup_t |mass(t) - mass(0)|
    double dirichlet_length;    // \int sqrt(G(f,f)) dt
    double speed_variance;      // variance of per-step speeds
    std::vector<double> vol_series;
    std::vector<double> hessian_series;
};
PathDiagnostics path_diagnostics(const GeodesicPath& path);

// ---- potentials -------------------------------------------------------------

// Potential form solve: beta03 = -u^{5/3} (L[Q_u(f)] + C2) (zero mean) and
// alpha_c = Q(f); the reduced Hodge-Laplacian ODE [-u (u^{-5/3} b)']' = f
// holds with residual `ode_residual`.
struct PotentialSolve {
    Profile beta03;
    Profile alpha_c;
    double ode_residual;
};
PotentialSolve potential_solve(const PositiveProfile& u, const TangentProfile& f);

}  // namespace g2flow
