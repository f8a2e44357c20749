#pragma once

#include <map>
#include <string>

#include "g2flow/forms.hpp"
#include "g2flow/operators.hpp"

namespace g2flow {

// ---- structure forms -------------------------------------------------------

// omega_1 = dx^{01}+dx^{23}, omega_2 = dx^{02}+dx^{31}, omega_3 = u dx^{03}+dx^{12}
template <class C>
FormT<C> hypersymplectic_omega(int i, const C& one, const C& u) {
    FormT<C> w(2);
    switch (i) {
        case 1:
            w.add_term({X0, X1}, one);
            w.add_term({X2, X3}, one);
            break;
        case 2:
            w.add_term({X0, X2}, one);
            w.add_term({X3, X1}, one);
            break;
        case 3:
            w.add_term({X0, X3}, u);
            w.add_term({X1, X2}, one);
            break;
        default:
            throw std::invalid_argument("omega index");
    }
    return w;
}

// phi = dtheta^{123} - sum_i dtheta^i ^ omega_i
template <class C>
FormT<C> g2_phi(const C& one, const C& u) {
    FormT<C> phi(3);
    phi.add_term({T1, T2, T3}, one);
    for (int i = 1; i <= 3; ++i) {
        FormT<C> th(1);
        th.add_term({T1 + i - 1}, one);
        phi -= wedge(th, hypersymplectic_omega(i, one, u));
    }
    return phi;
}

MultiForm g2_phi(const PositiveProfile& u);
MultiForm hypersymplectic_omega(int i, const PositiveProfile& u);

// psi = *phi
MultiForm dual_psi(const PositiveProfile& u);

// Closed-form torsion tau = sum dtheta^i ^ tau_i of the closed structure,
// tau_1 = -(1/3) u^{-5/3} u' dx^1, tau_2 likewise on dx^2,
// tau_3 = (2/3) u^{-2/3} u' dx^3.  Equals codifferential(phi).
MultiForm torsion(const PositiveProfile& u);

// ---- module projections ----------------------------------------------------

template <class C>
struct Proj3 {
    FormT<C> x1, x7, x27;
};

// 3-form split X = X1 + X7 + X27;  X1 = (1/7) g(phi,X) phi and
// X7 = -(1/4) * ( *(X ^ phi) ^ phi )  (the contraction operator
// *( *(.^phi)^phi ) acts as -4 on the 7-part in this orientation).
template <class C>
Proj3<C> project_3form(const FormT<C>& X, const FormT<C>& phi, const DiagMetric<C>& m, const C& zero) {
    if (X.degree() != 3) throw std::invalid_argument("project_3form: need degree 3");
    const C gphiX = inner_pointwise(phi, X, m, zero);
    FormT<C> x1 = phi;
    x1.mult_coeff(gphiX);
    x1.scale(1, 7);
    FormT<C> x7 = hodge_star(wedge(hodge_star(wedge(X, phi), m), phi), m);
    x7.scale(-1, 4);
    FormT<C> x27 = X;
    x27 -= x1;
    x27 -= x7;
    return {std::move(x1), std::move(x7), std::move(x27)};
}

template <class C>
struct Proj2 {
    FormT<C> p7, p14;
};

// 2-form split via the eigenspaces of a -> *(a ^ phi): +2 on O7, -1 on O14.
template <class C>
Proj2<C> project_2form(const FormT<C>& a, const FormT<C>& phi, const DiagMetric<C>& m) {
    if (a.degree() != 2) throw std::invalid_argument("project_2form: need degree 2");
    FormT<C> p7 = hodge_star(wedge(a, phi), m);
    p7 += a;
    p7.scale(1, 3);
    FormT<C> p14 = a;
    p14 -= p7;
    return {std::move(p7), std::move(p14)};
}

Proj3<Profile> project_3form(const MultiForm& X, const PositiveProfile& u);
Proj2<Profile> project_2form(const MultiForm& a, const PositiveProfile& u);

// pointwise g_phi(a,b) as a profile, and the L2 pairing \int g(a,b) vol_phi
Profile g2_inner(const MultiForm& a, const MultiForm& b, const PositiveProfile& u);
double l2_inner(const MultiForm& a, const MultiForm& b, const PositiveProfile& u);

// ---- torus connection building blocks (Lemma-A identities) -----------------

struct ATorusTerms {
    MultiForm i_beta_A_alpha;   // = 3 f Q_u(g) dx^3
    MultiForm i_alpha_A_beta;   // = 3 g Q_u(f) dx^3
    MultiForm delta_term[3];    // each = -u [Q_u(f) Q_u(g)]' dx^3
    MultiForm closed_form;      // -u [Q_u(f) Q_u(g)]' dx^3
    double max_delta_error;     // sup deviation of the three delta terms
};

ATorusTerms a_torus_terms(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g);

// ---- identity suite ---------------------------------------------------------

// Seeded randomized check of the pointwise G2 identities; returns the
// max error per identity over `trials` band-limited structures.
std::map<std::string, double> identity_suite(std::uint32_t n, std::uint64_t seed, int trials);

// Exact-rational identity suite on constant-coefficient inputs; errors are
// exact rational zeros, reported as 0.0/1.0 flags (0 == identity holds).
std::map<std::string, double> identity_suite_exact(std::uint64_t seed, int trials);

}  // namespace g2flow
