#include "g2flow/g2.hpp"

#include <cmath>

#include "g2flow/rng.hpp"

namespace g2flow {

MultiForm g2_phi(const PositiveProfile& u) {
    return g2_phi<Profile>(Profile::constant(u.grid(), 1.0), u.base());
}

MultiForm hypersymplectic_omega(int i, const PositiveProfile& u) {
    return hypersymplectic_omega<Profile>(i, Profile::constant(u.grid(), 1.0), u.base());
}

MultiForm dual_psi(const PositiveProfile& u) {
    DiagMetric<Profile> m(u);
    return hodge_star(g2_phi(u), m);
}

MultiForm torsion(const PositiveProfile& u) {
    const Profile du = derivative(u.base());
    MultiForm tau(2);
    tau.add_term({T1, X1}, (-1.0 / 3.0) * pow(u.base(), -5.0 / 3.0) * du);
    tau.add_term({T2, X2}, (-1.0 / 3.0) * pow(u.base(), -5.0 / 3.0) * du);
    tau.add_term({T3, X3}, (2.0 / 3.0) * pow(u.base(), -2.0 / 3.0) * du);
    return tau;
}

Proj3<Profile> project_3form(const MultiForm& X, const PositiveProfile& u) {
    DiagMetric<Profile> m(u);
    return project_3form(X, g2_phi(u), m, Profile::zero(u.grid()));
}

Proj2<Profile> project_2form(const MultiForm& a, const PositiveProfile& u) {
    DiagMetric<Profile> m(u);
    return project_2form(a, g2_phi(u), m);
}

Profile g2_inner(const MultiForm& a, const MultiForm& b, const PositiveProfile& u) {
    DiagMetric<Profile> m(u);
    return inner_pointwise(a, b, m, Profile::zero(u.grid()));
}

double l2_inner(const MultiForm& a, const MultiForm& b, const PositiveProfile& u) {
    DiagMetric<Profile> m(u);
    return integrate(g2_inner(a, b, u) * m.w_pow(1));
}

namespace {

// A^alpha_3(x, y) where x, y are vector fields c * d/d(axis):
// [ i_x d(alpha) ^ i_y omega_1 ^ omega_2 + i_y d(alpha) ^ i_x omega_1 ^ omega_2
//   + d(alpha) ^ i_{x,y} Omega_3 ] / (u^{1/3} vol_0),
// with i_{x,y} Omega_3 = (1/2)[i_x omega_1 ^ i_y omega_2 - i_x omega_2 ^ i_y omega_1].
Profile a3_tensor(const MultiForm& dalpha, const PositiveProfile& u, int xaxis, const Profile& xcoef, int yaxis,
                  const Profile& ycoef) {
    const MultiForm w1 = hypersymplectic_omega(1, u);
    const MultiForm w2 = hypersymplectic_omega(2, u);
    MultiForm tot = wedge(wedge(interior(dalpha, xaxis, xcoef), interior(w1, yaxis, ycoef)), w2);
    tot += wedge(wedge(interior(dalpha, yaxis, ycoef), interior(w1, xaxis, xcoef)), w2);
    MultiForm ixy = wedge(interior(w1, xaxis, xcoef), interior(w2, yaxis, ycoef));
    ixy -= wedge(interior(w2, xaxis, xcoef), interior(w1, yaxis, ycoef));
    ixy.scale(1, 2);
    tot += wedge(dalpha, ixy);
    const Profile* c = tot.coeff(kXAxes);
    Profile out = c ? *c : Profile::zero(u.grid());
    return out * pow(u.base(), -1.0 / 3.0);
}

}  // namespace

ATorusTerms a_torus_terms(const PositiveProfile& u, const TangentProfile& f, const TangentProfile& g) {
    require_same_grid(u.base(), f.base());
    require_same_grid(u.base(), g.base());
    const Grid grid = u.grid();
    DiagMetric<Profile> m(u);
    const Profile one = Profile::constant(grid, 1.0);
    const Profile Qf = canonical_Q(f, u);
    const Profile Qg = canonical_Q(g, u);
    const Profile um23 = m.w_pow(-2);  // u^{-2/3}
    const Profile sharp_f = um23 * Qf;
    const Profile sharp_g = um23 * Qg;

    // d(alpha_c) = f dx^{03}
    MultiForm alpha_c(1), beta_c(1);
    alpha_c.add_term({X3}, Qf);
    beta_c.add_term({X3}, Qg);
    const MultiForm dalpha = exterior_d(alpha_c);
    const MultiForm dbeta = exterior_d(beta_c);

    // i_{beta#} A^alpha_3 = sum_j A^alpha_3(d_j, beta#) g^{jj}-raised slot
    ATorusTerms out{MultiForm(1), MultiForm(1), {MultiForm(1), MultiForm(1), MultiForm(1)}, MultiForm(1), 0.0};
    for (int j = X0; j <= X3; ++j) {
        Profile aj = a3_tensor(dalpha, u, j, one, X3, sharp_g);
        if (aj.sup_norm() > 0) out.i_beta_A_alpha.add_term({j}, aj);
        Profile bj = a3_tensor(dbeta, u, j, one, X3, sharp_f);
        if (bj.sup_norm() > 0) out.i_alpha_A_beta.add_term({j}, bj);
    }

    const MultiForm w1 = hypersymplectic_omega(1, u);
    const MultiForm w2 = hypersymplectic_omega(2, u);
    MultiForm i_b_Om3 = wedge(interior(w1, X3, sharp_g), w2);
    MultiForm i_a_Om3 = wedge(interior(w1, X3, sharp_f), w2);
    MultiForm i_ab_Om3 = wedge(interior(w1, X3, sharp_f), interior(w2, X3, sharp_g));
    i_ab_Om3 -= wedge(interior(w2, X3, sharp_f), interior(w1, X3, sharp_g));
    i_ab_Om3.scale(1, 2);

    auto scaled = [&](MultiForm w) {
        w.mult_coeff(um23);
        return w;
    };
    MultiForm t0 = codifferential4(wedge(alpha_c, hodge_star(scaled(i_b_Om3), m, kXAxes)), m);
    MultiForm t1 = codifferential4(wedge(beta_c, hodge_star(scaled(i_a_Om3), m, kXAxes)), m);
    MultiForm t2 = codifferential4(hodge_star(scaled(i_ab_Om3), m, kXAxes), m);
    t2.negate();
    const Profile u23 = m.w_pow(2);
    for (MultiForm* t : {&t0, &t1, &t2}) t->mult_coeff(u23);
    out.delta_term[0] = t0;
    out.delta_term[1] = t1;
    out.delta_term[2] = t2;

    out.closed_form = MultiForm(1);
    out.closed_form.add_term({X3}, -(u.base() * derivative((Qf / u.base()) * (Qg / u.base()))));

    double err = 0.0;
    for (const MultiForm& t : {t0, t1, t2}) {
        MultiForm d = t;
        d -= out.closed_form;
        err = std::max(err, d.sup_norm());
    }
    out.max_delta_error = err;
    return out;
}

namespace {

MultiForm random_form(int degree, Grid grid, SplitMix64& rng, int kmax, double amp) {
    MultiForm out(degree);
    // iterate sorted masks
    for (unsigned m = 1; m <= kAllAxes; ++m) {
        if (std::popcount(m) != degree) continue;
        out.add_mask(static_cast<AxisMask>(m), random_tangent(grid, rng, kmax, amp) +
                                                   Profile::constant(grid, rng.uniform(-amp, amp)));
    }
    return out;
}

RationalForm random_rational_form(int degree, SplitMix64& rng) {
    RationalForm out(degree);
    for (unsigned m = 1; m <= kAllAxes; ++m) {
        if (std::popcount(m) != degree) continue;
        out.add_mask(static_cast<AxisMask>(m),
                     Rational(static_cast<std::int64_t>(rng.below(19)) - 9, static_cast<std::int64_t>(rng.below(4)) + 1));
    }
    return out;
}

void track(std::map<std::string, double>& r, const std::string& key, double err) {
    auto it = r.find(key);
    if (it == r.end())
        r[key] = err;
    else
        it->second = std::max(it->second, err);
}

}  // namespace

std::map<std::string, double> identity_suite(std::uint32_t n, std::uint64_t seed, int trials) {
    std::map<std::string, double> rep;
    Grid grid(n);
    SplitMix64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        PositiveProfile u = random_positive(grid, rng, 3, 0.3);
        DiagMetric<Profile> m(u);
        const Profile zero = Profile::zero(grid);
        const MultiForm phi = g2_phi(u);

        // g(phi,phi) = 7
        Profile gpp = inner_pointwise(phi, phi, m, zero);
        for (std::uint32_t k = 0; k < n; ++k) gpp[k] -= 7.0;
        track(rep, "g(phi,phi)=7", gpp.sup_norm());

        // torsion = delta phi
        {
            MultiForm d = codifferential(phi, m);
            d -= torsion(u);
            track(rep, "torsion=delta_phi", d.sup_norm());
        }

        // Hodge involution on a random 3-form
        MultiForm a2 = random_form(2, grid, rng, 3, 1.0);
        MultiForm X = exterior_d(a2);
        {
            MultiForm ss = hodge_star(hodge_star(X, m), m);
            ss -= X;  // (-1)^{p(7-p)} = +1 for p=3
            track(rep, "star_involution", ss.sup_norm());
        }

        // d o d = 0, delta o delta = 0
        track(rep, "d_d=0", exterior_d(X).sup_norm());
        track(rep, "delta_delta=0", codifferential(codifferential(X, m), m).sup_norm());

        // projections
        auto pr = project_3form(X, phi, m, zero);
        {
            MultiForm rec = pr.x1;
            rec += pr.x7;
            rec += pr.x27;
            rec -= X;
            track(rep, "proj_completeness", rec.sup_norm());
            track(rep, "proj_orth_1_7", inner_pointwise(pr.x1, pr.x7, m, zero).sup_norm());
            track(rep, "proj_orth_7_27", inner_pointwise(pr.x7, pr.x27, m, zero).sup_norm());
            track(rep, "proj_orth_1_27", inner_pointwise(pr.x1, pr.x27, m, zero).sup_norm());
            auto pp = project_3form(pr.x7, phi, m, zero);
            MultiForm idem = pp.x7;
            idem -= pr.x7;
            track(rep, "proj_idempotent", idem.sup_norm());
        }

        // j_phi X7 = 0
        track(rep, "j_phi_X7=0", contract_j(phi, pr.x7, m, zero).sup_norm());

        // i_phi j_phi X27 = 4 X27
        {
            MultiForm ij = contract_i(contract_j(phi, pr.x27, m, zero), phi, m);
            MultiForm four = pr.x27;
            four.scale(4);
            ij -= four;
            track(rep, "i_phi_j_phi_X27=4X27", ij.sup_norm());
        }

        // |j_phi X1|^2 = 18 |X1|^2 and j_phi X1 = (6/7) g(phi,dalpha) g
        {
            Sym2Tensor j1 = contract_j(phi, pr.x1, m, zero);
            Profile lhs = sym2_inner(j1, j1, m, zero);
            Profile rhs = inner_pointwise(pr.x1, pr.x1, m, zero);
            rhs *= 18.0;
            lhs -= rhs;
            track(rep, "|j_X1|^2=18|X1|^2", lhs.sup_norm());

            const Profile gphida = inner_pointwise(phi, X, m, zero);
            double worst = 0.0;
            for (int i = 0; i < 7; ++i)
                for (int j = i; j < 7; ++j) {
                    Profile expect = (i == j) ? (6.0 / 7.0) * gphida * m.w_pow(kMetricExp[i]) : Profile::zero(grid);
                    Profile diff = j1(i, j) - expect;
                    worst = std::max(worst, diff.sup_norm());
                }
            track(rep, "j_X1=(6/7)g(phi,da)g", worst);
        }

        // j symmetric in its arguments
        {
            MultiForm b2 = random_form(2, grid, rng, 3, 1.0);
            MultiForm c2 = random_form(2, grid, rng, 3, 1.0);
            Sym2Tensor jbc = contract_j(b2, c2, m, zero);
            Sym2Tensor jcb = contract_j(c2, b2, m, zero);
            double worst = 0.0;
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) {
                    Profile d = jbc(i, j) - jcb(i, j);
                    worst = std::max(worst, d.sup_norm());
                }
            track(rep, "j_ab=j_ba", worst);
        }

        // O14: g(phi, d a14) = g(tau, a14); and the 2-form split
        {
            auto spl = project_2form(a2, phi, m);
            MultiForm rec = spl.p7;
            rec += spl.p14;
            rec -= a2;
            track(rep, "2form_split_complete", rec.sup_norm());
            track(rep, "2form_orth", inner_pointwise(spl.p7, spl.p14, m, zero).sup_norm());
            Profile lhs = inner_pointwise(phi, exterior_d(spl.p14), m, zero);
            Profile rhs = inner_pointwise(torsion(u), spl.p14, m, zero);
            lhs -= rhs;
            track(rep, "g(phi,da14)=g(tau,a14)", lhs.sup_norm());
        }

        // torus connection identities
        {
            TangentProfile f(random_tangent(grid, rng, 3, 1.0));
            TangentProfile g(random_tangent(grid, rng, 3, 1.0));
            ATorusTerms at = a_torus_terms(u, f, g);
            track(rep, "a_torus_delta_terms", at.max_delta_error);
            MultiForm expect(1);
            expect.add_term({X3}, 3.0 * (f.base() * (canonical_Q(g, u) / u.base())));
            MultiForm d = at.i_beta_A_alpha;
            d -= expect;
            track(rep, "a_torus_i_terms", d.sup_norm());
        }
    }
    return rep;
}

std::map<std::string, double> identity_suite_exact(std::uint64_t seed, int trials) {
    std::map<std::string, double> rep;
    SplitMix64 rng(seed);
    const Rational zero(0), one(1);
    for (int t = 0; t < trials; ++t) {
        // u = w^3 with small rational w > 0
        const Rational w(static_cast<std::int64_t>(rng.below(3)) + 1,
                         static_cast<std::int64_t>(rng.below(2)) + 1);
        DiagMetric<Rational> m(w);
        const Rational u = m.w_pow(3);
        const RationalForm phi = g2_phi<Rational>(one, u);

        RationalForm gpp_diff(0);
        gpp_diff.add_mask(0, inner_pointwise(phi, phi, m, zero) - Rational(7));
        track(rep, "exact:g(phi,phi)=7", gpp_diff.sup_norm());

        RationalForm X = random_rational_form(3, rng);
        {
            RationalForm ss = hodge_star(hodge_star(X, m), m);
            ss -= X;
            track(rep, "exact:star_involution", ss.sup_norm());
        }
        auto pr = project_3form(X, phi, m, zero);
        {
            RationalForm rec = pr.x1;
            rec += pr.x7;
            rec += pr.x27;
            rec -= X;
            track(rep, "exact:proj_completeness", rec.sup_norm());
            track(rep, "exact:proj_orth",
                  std::abs((inner_pointwise(pr.x1, pr.x7, m, zero) + inner_pointwise(pr.x7, pr.x27, m, zero) +
                            inner_pointwise(pr.x1, pr.x27, m, zero))
                               .to_double()));
        }
        track(rep, "exact:j_phi_X7=0", contract_j(phi, pr.x7, m, zero).sup_norm());
        {
            RationalForm ij = contract_i(contract_j(phi, pr.x27, m, zero), phi, m);
            RationalForm four = pr.x27;
            four.scale(4);
            ij -= four;
            track(rep, "exact:i_phi_j_phi_X27=4X27", ij.sup_norm());
        }
        {
            Sym2T<Rational> j1 = contract_j(phi, pr.x1, m, zero);
            Rational lhs = sym2_inner(j1, j1, m, zero);
            Rational rhs = inner_pointwise(pr.x1, pr.x1, m, zero) * Rational(18);
            track(rep, "exact:|j_X1|^2=18|X1|^2", std::abs((lhs - rhs).to_double()));
        }
        {
            RationalForm a2 = random_rational_form(2, rng);
            RationalForm b2 = random_rational_form(2, rng);
            Sym2T<Rational> jab = contract_j(a2, b2, m, zero);
            Sym2T<Rational> jba = contract_j(b2, a2, m, zero);
            double worst = 0.0;
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) worst = std::max(worst, std::abs((jab(i, j) - jba(i, j)).to_double()));
            track(rep, "exact:j_ab=j_ba", worst);
        }
    }
    return rep;
}

}  // namespace g2flow
