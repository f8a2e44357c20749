#include <cmath>
#include <numbers>

#include "doctest.h"
#include "g2flow/operators.hpp"
#include "g2flow/profile.hpp"
#include "g2flow/rng.hpp"
#include "g2flow/spectral.hpp"

using namespace g2flow;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Profile sin_k(Grid g, int k) {
    return Profile::sample(g, [k](double x) { return std::sin(kTwoPi * k * x); });
}
Profile cos_k(Grid g, int k) {
    return Profile::sample(g, [k](double x) { return std::cos(kTwoPi * k * x); });
}
}  // namespace

TEST_CASE("grid rejects bad sizes") {
    CHECK_THROWS_AS(Grid(15), std::invalid_argument);
    CHECK_THROWS_AS(Grid(100), std::invalid_argument);
    CHECK_THROWS_AS(Grid(8), std::invalid_argument);
    CHECK_NOTHROW(Grid(16));
    CHECK_NOTHROW(Grid(256));
}

TEST_CASE("quadrature on basic modes") {
    Grid g(64);
    CHECK(integrate(Profile::constant(g, 1.0)) == 1.0);
    CHECK(std::abs(integrate(sin_k(g, 1))) < 1e-14);
    // cos^2(2 pi x) -> 1/2 (analytic quadrature oracle)
    Profile c2 = cos_k(g, 1) * cos_k(g, 1);
    CHECK(std::abs(integrate(c2) - 0.5) < 1e-14);
}

TEST_CASE("spectral derivative") {
    Grid g(64);
    Profile d = derivative(sin_k(g, 1));
    Profile expect = kTwoPi * cos_k(g, 1);
    CHECK((d - expect).sup_norm() < 1e-10);
    CHECK(derivative(Profile::constant(g, 3.25)).sup_norm() < 1e-12);
}

TEST_CASE("antiderivative_L") {
    Grid g(64);
    // sin(2 pi x) -> -cos(2 pi x)/(2 pi), zero-mean
    Profile L = antiderivative_L(sin_k(g, 1));
    Profile expect = (-1.0 / kTwoPi) * cos_k(g, 1);
    CHECK((L - expect).sup_norm() < 1e-12);
    CHECK(std::abs(integrate(L)) < 1e-14);
    // cos -> sin/(2 pi)
    Profile L2 = antiderivative_L(cos_k(g, 1));
    CHECK((L2 - (1.0 / kTwoPi) * sin_k(g, 1)).sup_norm() < 1e-12);
    // zero map
    CHECK(antiderivative_L(Profile::zero(g)).sup_norm() == 0.0);
    // round trip derivative(antiderivative_L(f)) = f
    Profile f = sin_k(g, 2);
    CHECK((derivative(antiderivative_L(f)) - f).sup_norm() < 1e-10);
    // non-zero-mean input is rejected
    CHECK_THROWS_AS(antiderivative_L(Profile::constant(g, 1.0)), std::invalid_argument);
}

TEST_CASE("canonical Q basics") {
    Grid g(64);
    PositiveProfile one(Profile::constant(g, 1.0));
    TangentProfile f(sin_k(g, 1));
    // u == 1: C1 reduces to mean subtraction, Q = L
    Profile q = canonical_Q(f, one);
    CHECK((q - (-1.0 / kTwoPi) * cos_k(g, 1)).sup_norm() < 1e-12);
    Profile q2 = canonical_Q(TangentProfile(cos_k(g, 1)), one);
    CHECK((q2 - (1.0 / kTwoPi) * sin_k(g, 1)).sup_norm() < 1e-12);
}

TEST_CASE("canonical Q normalization and round trip") {
    Grid g(256);
    PositiveProfile u(Profile::sample(g, [](double x) { return 1.0 + 0.5 * std::cos(kTwoPi * x); }));
    TangentProfile f(sin_k(g, 1));
    Profile q = canonical_Q(f, u);
    CHECK(std::abs(integrate(q / u.base())) < 1e-12);
    CHECK((derivative(q) - f.base()).sup_norm() < 1e-9);
}

TEST_CASE("Q operator properties on random data") {
    Grid g(256);
    SplitMix64 rng(2024);
    for (int t = 0; t < 20; ++t) {
        PositiveProfile u = random_positive(g, rng, 4, 0.4);
        TangentProfile f(random_tangent(g, rng, 5, 1.0));
        TangentProfile h(random_tangent(g, rng, 5, 1.0));
        Profile qf = canonical_Q(f, u);
        // derivative recovers f
        CHECK((derivative(qf) - f.base()).sup_norm() < 1e-8);
        // \int u^{-1} Q = 0 (algebraic consequence of C1)
        CHECK(std::abs(integrate(qf / u.base())) < 1e-12);
        // linearity
        const double a = 1.7, b = -0.4;
        TangentProfile comb(a * f.base() + b * h.base());
        Profile lin = canonical_Q(comb, u) - (a * canonical_Q(f, u) + b * canonical_Q(h, u));
        CHECK(lin.sup_norm() < 1e-12);
        // antiderivative_L zero mean
        CHECK(std::abs(integrate(antiderivative_L(f.base()))) < 1e-14);
    }
}

TEST_CASE("profile wrappers enforce invariants") {
    Grid g(32);
    CHECK_THROWS_AS(PositiveProfile(Profile::constant(g, -1.0)), PositivityLost);
    CHECK_THROWS_AS(PositiveProfile(Profile::constant(g, 2.0), true), MassMismatch);
    CHECK_THROWS_AS(TangentProfile(Profile::constant(g, 0.5)), std::invalid_argument);
    Grid g2(64);
    CHECK_THROWS_AS(Profile::zero(g) + Profile::zero(g2), GridMismatch);
}

TEST_CASE("fourier shift and eval") {
    Grid g(64);
    Profile u = Profile::sample(g, [](double x) { return 1.0 + 0.3 * std::cos(kTwoPi * x) + 0.1 * std::sin(2 * kTwoPi * x); });
    Profile shifted = fourier_shift(u, 0.25);
    Profile expect = Profile::sample(g, [](double x) {
        return 1.0 + 0.3 * std::cos(kTwoPi * (x + 0.25)) + 0.1 * std::sin(2 * kTwoPi * (x + 0.25));
    });
    CHECK((shifted - expect).sup_norm() < 1e-12);
    CHECK(fourier_eval(u, 0.33) == doctest::Approx(1.0 + 0.3 * std::cos(kTwoPi * 0.33) + 0.1 * std::sin(2 * kTwoPi * 0.33)).epsilon(1e-12));
}

TEST_CASE("cyclic shift detection") {
    Grid g(128);
    Profile u = Profile::sample(g, [](double x) { return 1.0 + 0.2 * std::cos(kTwoPi * x) + 0.05 * std::sin(3 * kTwoPi * x); });
    Profile v = fourier_shift(u, 0.3);
    CorrelationPeak p = best_cyclic_shift(u, v);
    CHECK(p.score > 1.0 - 1e-8);
    CHECK(std::abs(p.shift - 0.3) < 1e-6);
    // different Fourier support: no match
    Profile w = Profile::sample(g, [](double x) { return 1.0 + 0.2 * std::cos(2 * kTwoPi * x); });
    CHECK(best_cyclic_shift(u, w).score < 1.0 - 1e-3);
}
