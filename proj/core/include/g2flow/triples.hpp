#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "g2flow/linalg.hpp"
#include "g2flow/operators.hpp"
#include "g2flow/rational.hpp"
#include "g2flow/rng.hpp"
#include "g2flow/weightfn.hpp"

namespace g2flow {

// Three coupled (u_i, f_i) pairs on a common grid.
struct TripleState {
    std::array<PositiveProfile, 3> u;
    std::array<TangentProfile, 3> f;

    TripleState(std::array<PositiveProfile, 3> uu, std::array<TangentProfile, 3> ff);
    const Grid& grid() const { return u[0].grid(); }
};

// a_i = f_i/u_i, b_i = u_i'/u_i, c_i = Q_i(f_i)/u_i, b_ij = b_i c_j
struct PointwiseCoeffs {
    std::array<Profile, 3> a, b, c;
    std::array<std::array<Profile, 3>, 3> bij;
};
PointwiseCoeffs pointwise_coeffs(const TripleState& s);

// ---- component-wise space M3 -------------------------------------------------

// (u_i)_t = f_i, (f_i)_t = Utilde_i' with Utilde_i = (2 a_i c_i - b_i c_i^2) u_i;
// identical to three copies of the single-component geodesic.
std::array<std::pair<Profile, Profile>, 3> m3_geodesic_rhs(const TripleState& s);

// d^2/dt^2 Vol_chi = sum_i \int chi_i'' K_i^2, K_i = u_i (a_i - b_i c_i)
double m3_hessian(const TripleState& s, const std::array<WeightFn, 3>& chi);

// RK4 trajectory of the M3 geodesic; states at steps+1 uniform times
std::vector<TripleState> m3_geodesic_ivp(const TripleState& s0, double t_final, double dt);

// ---- coupled space M3-tilde ----------------------------------------------------

// (f_i)_t = Utilde_i' with
// Utilde_i = sum_j eps_ij [a_j c_i + a_j c_j + (c_j^2/2) sum_{k != i} b_k - c_j^2 b_j] u_i
std::array<std::pair<Profile, Profile>, 3> m3tilde_geodesic_rhs(const TripleState& s);

std::vector<TripleState> m3tilde_geodesic_ivp(const TripleState& s0, double t_final, double dt);

// r = chi_uu(u), s = chi_uu(u) + chi_u(u)/u
std::pair<double, double> rs_from_chi(const WeightFn& chi, double u_value);

// Second variation of Vol_chi along the M3-tilde geodesic, both routes:
//   * expanded: \int u^2 Q(a, b_ij; r(u), s(u)) with the 15-group expansion
//   * lemma:    \int u^2 { r sum a_i^2 + 2 s sum_{i<j} a_i a_j
//                          - sum_i [ r b_i + s sum_{l != i} b_l ] Utilde_i/u_i }
// where u = u1 u2 u3 pointwise.
double m3tilde_vtt(const TripleState& s, const WeightFn& chi);
double m3tilde_vtt_lemma(const TripleState& s, const WeightFn& chi);

// expanded quadratic form on a raw 12-vector (a1,a2,a3,b11,...,b33)
double q_expanded(const std::array<double, 12>& x, double r, double s);

// ---- the 12x12 certificate matrix ----------------------------------------------

// Symmetric matrix of the quadratic form Q (ordering a1,a2,a3,b11,..,b33).
SymMatrix build_matrix_A(double r, double s);
// exact-rational entries; trace = 3r + 3(r-s)
std::vector<std::vector<Rational>> build_matrix_A_exact(const Rational& r, const Rational& s);

struct NsdCertificate {
    double lambda_max;
    std::vector<double> witness;  // eigenvector of lambda_max
    double eigen_residual;
    bool not_nsd;  // lambda_max > 1e-10
    std::vector<double> eigenvalues;
};
NsdCertificate nsd_certificate(const SymMatrix& a);

// ---- non-concavity search --------------------------------------------------------

struct SearchReport {
    double best_value;
    std::vector<double> best_params;
    int evaluations;
    bool budget_exhausted;
    double seed_value;  // objective at the eigen-witness seed
};

// Random multistart + projected coordinate ascent over band-limited
// (u_i, f_i), maximizing m3tilde_vtt at fixed chi; deterministic per seed.
SearchReport nonconcavity_search(const WeightFn& chi, std::uint32_t n, std::uint64_t seed, int budget);

// rebuild the triple state encoded by SearchReport::best_params
TripleState search_state_from_params(const std::vector<double>& params, Grid grid);

// ---- volume upper bound -----------------------------------------------------------

struct VolumeBoundReport {
    double lhs;   // 3 \int (det q)^{1/3}
    double rhs;   // \int tr q
    double slack; // rhs - lhs >= 0
    bool positive_definite;
    double max_anisotropy;  // sup |q - (tr q /3) Id|; 0 iff q = c(x) Id
};

// q is a symmetric 3x3 matrix of profiles (row-major, q[i][j] = q[j][i]).
VolumeBoundReport volume_bound_check(const std::array<std::array<Profile, 3>, 3>& q);

}  // namespace g2flow
