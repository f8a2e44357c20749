#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "g2flow/forms.hpp"
#include "g2flow/g2.hpp"
#include "g2flow/io.hpp"
#include "g2flow/rng.hpp"

using namespace g2flow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

PositiveProfile test_u(Grid g) {
    return PositiveProfile(Profile::sample(g, [](double x) { return 1.0 + 0.1 * std::sin(kTwoPi * x); }));
}
}  // namespace

TEST_CASE("wedge on basis elements") {
    Grid g(32);
    const Profile one = Profile::constant(g, 1.0);
    MultiForm t1(1), t2(1);
    t1.add_term({T1}, one);
    t2.add_term({T2}, one);
    MultiForm w = wedge(t1, t2);
    REQUIRE(w.terms().size() == 1);
    CHECK((*w.coeff(0b011))[0] == 1.0);
    // dx0^dx1 ^ dx2^dx3 = dx^{0123}
    MultiForm a(2), b(2);
    a.add_term({X0, X1}, one);
    b.add_term({X2, X3}, one);
    CHECK((*wedge(a, b).coeff(kXAxes))[0] == 1.0);
    // omega_1 ^ omega_1 = 2 dx^{0123}  (q_11 = 1)
    PositiveProfile u = test_u(g);
    MultiForm w1 = hypersymplectic_omega(1, u);
    MultiForm ww = wedge(w1, w1);
    REQUIRE(ww.coeff(kXAxes) != nullptr);
    CHECK((*ww.coeff(kXAxes) - 2.0 * one).sup_norm() < 1e-14);
    // graded commutativity: a ^ b = (-1)^{pq} b ^ a
    SplitMix64 rng(5);
    MultiForm r1(1), r2(2);
    r1.add_term({X1}, random_tangent(g, rng, 2, 1.0));
    r2.add_term({T2, X0}, random_tangent(g, rng, 2, 1.0));
    MultiForm lhs = wedge(r1, r2);
    lhs -= wedge(r2, r1);  // p*q = 2 even -> equal
    CHECK(lhs.sup_norm() < 1e-15);
    // degree overflow
    MultiForm f4(4), f5(4);
    f4.add_term({T1, T2, T3, X0}, one);
    f5.add_term({X0, X1, X2, X3}, one);
    CHECK_THROWS_AS(wedge(f4, f5), std::invalid_argument);
}

TEST_CASE("exterior derivative") {
    Grid g(64);
    PositiveProfile u = test_u(g);
    // d(u dx^{03}) = 0 (omega_3 is closed)
    MultiForm w3 = hypersymplectic_omega(3, u);
    CHECK(exterior_d(w3).sup_norm() == 0.0);
    // d(a3(x0) dx^3) = a3' dx^{03}
    Profile a3 = Profile::sample(g, [](double x) { return std::sin(kTwoPi * x); });
    MultiForm al(1);
    al.add_term({X3}, a3);
    MultiForm d = exterior_d(al);
    REQUIRE(d.terms().size() == 1);
    CHECK((*d.coeff((1 << X0) | (1 << X3)) - derivative(a3)).sup_norm() < 1e-12);
    // d(phi(u)) = 0
    CHECK(exterior_d(g2_phi(u)).sup_norm() == 0.0);
    // d o d = 0 on random forms
    SplitMix64 rng(11);
    MultiForm r(2);
    r.add_term({T1, X1}, random_tangent(g, rng, 3, 1.0));
    r.add_term({X2, X3}, random_tangent(g, rng, 3, 1.0));
    CHECK(exterior_d(exterior_d(r)).sup_norm() < 1e-12);
}

TEST_CASE("hodge star table and involution") {
    Grid g(64);
    PositiveProfile one_u(Profile::constant(g, 1.0));
    DiagMetric<Profile> m1(one_u);
    const Profile one = Profile::constant(g, 1.0);
    // *4 dx0 = dx^{123} at u == 1
    MultiForm dx0(1);
    dx0.add_term({X0}, one);
    MultiForm s = hodge_star(dx0, m1, kXAxes);
    REQUIRE(s.coeff((1 << X1) | (1 << X2) | (1 << X3)) != nullptr);
    CHECK((*s.coeff((1 << X1) | (1 << X2) | (1 << X3)) - one).sup_norm() < 1e-14);

    PositiveProfile u = test_u(g);
    DiagMetric<Profile> m(u);
    // eq. table rows with v_1 = v_2 = w^{-1}, v_3 = w^2 and w = u^{1/3}:
    // *4 dx^0 = w^{-1} dx^{123}
    MultiForm s40 = hodge_star(dx0, m, kXAxes);
    CHECK((*s40.coeff((1 << X1) | (1 << X2) | (1 << X3)) - m.w_pow(-1)).sup_norm() < 1e-13);
    const Profile w = m.w_pow(1);
    const std::array<Profile, 4> v{one, 1.0 / w, 1.0 / w, w * w};
    for (int i = 1; i <= 3; ++i) {
        // *3 dtheta^i = v_i^{-1} dtheta^{bar i}
        MultiForm dth(1);
        dth.add_term({T1 + i - 1}, one);
        MultiForm st = hodge_star(dth, m, kThetaAxes);
        MultiForm expect(2);
        expect.add_term({T1 + (i % 3), T1 + ((i + 1) % 3)}, 1.0 / v[static_cast<std::size_t>(i)]);
        st -= expect;
        CHECK(st.sup_norm() < 1e-13);
        // *4 dx^{0i} = (w v_i)^{-1} dx^{bar i}
        MultiForm dx0i(2);
        dx0i.add_term({X0, X0 + i}, one);
        MultiForm s4 = hodge_star(dx0i, m, kXAxes);
        MultiForm expect4(2);
        expect4.add_term({X0 + (i % 3) + 1, X0 + ((i + 1) % 3) + 1},
                         1.0 / (w * v[static_cast<std::size_t>(i)]));
        s4 -= expect4;
        CHECK(s4.sup_norm() < 1e-13);
        // *4 dx^i = -w v_i^{-1} dx^{0 bar i}
        MultiForm dxi(1);
        dxi.add_term({X0 + i}, one);
        MultiForm si = hodge_star(dxi, m, kXAxes);
        MultiForm expecti(3);
        expecti.add_term({X0, X0 + (i % 3) + 1, X0 + ((i + 1) % 3) + 1},
                         -1.0 * (w / v[static_cast<std::size_t>(i)]));
        si -= expecti;
        CHECK(si.sup_norm() < 1e-13);
    }
    // *4 omega_3 = omega_3 (self-dual)
    MultiForm w3 = hypersymplectic_omega(3, u);
    MultiForm sw3 = hodge_star(w3, m, kXAxes);
    sw3 -= w3;
    CHECK(sw3.sup_norm() < 1e-13);
    // ** = (-1)^{p(7-p)} identity for p = 3
    SplitMix64 rng(3);
    MultiForm r(3);
    r.add_term({T1, X0, X2}, random_tangent(g, rng, 3, 1.0));
    r.add_term({X1, X2, X3}, random_tangent(g, rng, 3, 1.0));
    r.add_term({T1, T2, T3}, random_tangent(g, rng, 3, 1.0));
    MultiForm ss = hodge_star(hodge_star(r, m), m);
    ss -= r;
    CHECK(ss.sup_norm() < 1e-12);
}

TEST_CASE("codifferential and torsion anchor") {
    Grid g(256);
    PositiveProfile u = test_u(g);
    DiagMetric<Profile> m(u);
    MultiForm phi = g2_phi(u);
    MultiForm tau = codifferential(phi, m);
    // anchors at x0 = 0: tau_3 coefficient (2/3)*0.2*pi = 0.41888,
    // tau_1 coefficient -(1/3)*0.2*pi = -0.20944
    const Profile* t3 = tau.coeff((1 << T3) | (1 << X3));
    REQUIRE(t3 != nullptr);
    CHECK((*t3)[0] == doctest::Approx((2.0 / 3.0) * 0.1 * kTwoPi).epsilon(1e-8));
    CHECK(std::abs((*t3)[0] - 0.41888) < 1e-4);
    const Profile* t1 = tau.coeff((1 << T1) | (1 << X1));
    REQUIRE(t1 != nullptr);
    CHECK(std::abs((*t1)[0] - (-0.20944)) < 1e-4);
    // closed form matches
    MultiForm diff = tau;
    diff -= torsion(u);
    CHECK(diff.sup_norm() < 1e-8);
    // flat structure: tau = 0 and d psi = 0 (hyper-Kaehler baseline)
    PositiveProfile flat(Profile::constant(g, 1.0));
    CHECK(codifferential(g2_phi(flat), DiagMetric<Profile>(flat)).sup_norm() < 1e-14);
    CHECK(exterior_d(dual_psi(flat)).sup_norm() < 1e-14);
    CHECK(exterior_d(dual_psi(u)).sup_norm() > 1e-3);
    CHECK(torsion(PositiveProfile(Profile::constant(g, 2.5))).sup_norm() == 0.0);
    // delta omega_3 = 0 (self-dual and closed)
    CHECK(codifferential4(hypersymplectic_omega(3, u), m).sup_norm() < 1e-12);
    // delta o delta = 0
    SplitMix64 rng(17);
    MultiForm r(3);
    r.add_term({T1, X0, X2}, random_tangent(g, rng, 3, 1.0));
    r.add_term({T2, T3, X1}, random_tangent(g, rng, 3, 1.0));
    CHECK(codifferential(codifferential(r, m), m).sup_norm() < 1e-12);
}

TEST_CASE("torsion matches codifferential on random structures") {
    Grid g(128);
    SplitMix64 rng(99);
    for (int t = 0; t < 20; ++t) {
        PositiveProfile u = random_positive(g, rng, 4, 0.35);
        DiagMetric<Profile> m(u);
        MultiForm d = codifferential(g2_phi(u), m);
        d -= torsion(u);
        CHECK(d.sup_norm() < 1e-8);
    }
}

TEST_CASE("dual psi coefficients") {
    Grid g(32);
    PositiveProfile u8(Profile::constant(g, 8.0));
    MultiForm psi = dual_psi(u8);
    // |coefficient| of dtheta^{12} ^ dx^{12} is 8^{-2/3} = 0.25; the
    // expansion of *phi carries it with a minus sign
    const Profile* c = psi.coeff((1 << T1) | (1 << T2) | (1 << X1) | (1 << X2));
    REQUIRE(c != nullptr);
    CHECK((*c)[0] == doctest::Approx(-0.25).epsilon(1e-12));
    // vol4 part: u^{1/3} dx^{0123} = 2 dx^{0123}
    CHECK((*psi.coeff(kXAxes))[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("projections on special elements") {
    Grid g(64);
    PositiveProfile u = test_u(g);
    MultiForm phi = g2_phi(u);
    // X = phi -> (phi, 0, 0)
    auto pr = project_3form(phi, u);
    MultiForm d = pr.x1;
    d -= phi;
    CHECK(d.sup_norm() < 1e-12);
    CHECK(pr.x7.sup_norm() < 1e-12);
    CHECK(pr.x27.sup_norm() < 1e-12);
    // alpha = i_V phi for V = d/dx0: pure Omega^2_7, so pi14 = 0
    MultiForm iv = interior(phi, X0, Profile::constant(g, 1.0));
    auto spl = project_2form(iv, u);
    CHECK(spl.p14.sup_norm() < 1e-12);
    // bold alpha = a3 dtheta^3 ^ dx^3:
    // pi7 = (1/3)[(a3/u) t1x1 + (a3/u) t2x2 + a3 t3x3] = i_V phi
    Profile a3 = Profile::sample(g, [](double x) { return 0.3 + 0.2 * std::cos(kTwoPi * x); });
    MultiForm bold(2);
    bold.add_term({T3, X3}, a3);
    auto spl2 = project_2form(bold, u);
    MultiForm expect(2);
    expect.add_term({T1, X1}, a3 / u.base() * (1.0 / 3.0));
    expect.add_term({T2, X2}, a3 / u.base() * (1.0 / 3.0));
    expect.add_term({T3, X3}, (1.0 / 3.0) * a3);
    MultiForm dd = spl2.p7;
    dd -= expect;
    CHECK(dd.sup_norm() < 1e-13);
    MultiForm ivv = interior(phi, X0, a3 / u.base() * (1.0 / 3.0));
    MultiForm d3 = spl2.p7;
    d3 -= ivv;
    CHECK(d3.sup_norm() < 1e-13);
    // delta of the pi14 part vanishes
    DiagMetric<Profile> m(u);
    CHECK(codifferential(spl2.p14, m).sup_norm() < 1e-10);
}

TEST_CASE("inner products") {
    Grid g(64);
    PositiveProfile u = test_u(g);
    Profile gpp = g2_inner(g2_phi(u), g2_phi(u), u);
    for (std::uint32_t k = 0; k < g.n(); ++k) CHECK(gpp[k] == doctest::Approx(7.0).epsilon(1e-13));
    PositiveProfile flat(Profile::constant(g, 1.0));
    MultiForm e(2);
    e.add_term({T3, X3}, Profile::constant(g, 1.0));
    CHECK(l2_inner(e, e, flat) == doctest::Approx(1.0).epsilon(1e-14));
    MultiForm z(1);
    z.add_term({X1}, Profile::constant(g, 1.0));
    CHECK_THROWS_AS(g2_inner(e, z, u), std::invalid_argument);
}

TEST_CASE("a_torus_terms closed forms") {
    Grid g(128);
    // u == 1, f = g = sin: i_{beta#} A^alpha_3 = 3 sin * (-cos/(2pi)) dx3
    PositiveProfile flat(Profile::constant(g, 1.0));
    TangentProfile f(Profile::sample(g, [](double x) { return std::sin(kTwoPi * x); }));
    ATorusTerms at = a_torus_terms(flat, f, f);
    const Profile* c = at.i_beta_A_alpha.coeff(1 << X3);
    REQUIRE(c != nullptr);
    Profile expect = Profile::sample(
        g, [](double x) { return 3.0 * std::sin(kTwoPi * x) * (-std::cos(kTwoPi * x) / kTwoPi); });
    CHECK((*c - expect).sup_norm() < 1e-12);
    CHECK(at.max_delta_error < 1e-10);
    // f = 0 -> everything vanishes
    TangentProfile zf(Profile::zero(g));
    ATorusTerms at0 = a_torus_terms(flat, zf, zf);
    CHECK(at0.i_beta_A_alpha.sup_norm() == 0.0);
    CHECK(at0.i_alpha_A_beta.sup_norm() == 0.0);
    for (const auto& t : at0.delta_term) CHECK(t.sup_norm() < 1e-15);
    // 10 random (u, f, g): independent-codifferential delta-term equality
    SplitMix64 rng(55);
    for (int t = 0; t < 10; ++t) {
        PositiveProfile u = random_positive(g, rng, 3, 0.35);
        TangentProfile ff(random_tangent(g, rng, 3, 1.0));
        TangentProfile gg(random_tangent(g, rng, 3, 1.0));
        CHECK(a_torus_terms(u, ff, gg).max_delta_error < 1e-8);
    }
}

TEST_CASE("identity suite (float)") {
    auto rep = identity_suite(128, 42, 25);
    for (const auto& [name, err] : rep) {
        INFO(name, " err=", err);
        CHECK(err < 1e-8);
    }
}

TEST_CASE("identity suite (exact rational)") {
    auto rep = identity_suite_exact(7, 10);
    for (const auto& [name, err] : rep) {
        INFO(name, " err=", err);
        CHECK(err == 0.0);
    }
}

TEST_CASE("form dump format") {
    Grid g(16);
    PositiveProfile u = test_u(g);
    MultiForm tau = torsion(u);
    std::ostringstream os;
    dump_form(os, tau);
    const std::string s = os.str();
    CHECK(s.find("AXES t1 x1 COEFF profile:p0") != std::string::npos);
    CHECK(s.find("PROFILE p0") != std::string::npos);
    MultiForm e(2);
    e.add_term({T3, X3}, Profile::constant(g, 0.5));
    std::ostringstream os2;
    dump_form(os2, e);
    CHECK(os2.str() == "AXES t3 x3 COEFF 0.5\n");
}
