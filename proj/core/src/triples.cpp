#include "g2flow/triples.hpp"

#include <cmath>
#include <numbers>

#include "g2flow/spectral.hpp"

namespace g2flow {

TripleState::TripleState(std::array<PositiveProfile, 3> uu, std::array<TangentProfile, 3> ff)
    : u(std::move(uu)), f(std::move(ff)) {
    for (int i = 0; i < 3; ++i) {
        require_same_grid(u[0].base(), u[static_cast<std::size_t>(i)].base());
        require_same_grid(u[0].base(), f[static_cast<std::size_t>(i)].base());
    }
}

PointwiseCoeffs pointwise_coeffs(const TripleState& s) {
    auto mk = [&](int i) {
        const auto& ui = s.u[static_cast<std::size_t>(i)];
        const auto& fi = s.f[static_cast<std::size_t>(i)];
        return std::array<Profile, 3>{fi.base() / ui.base(), derivative(ui.base()) / ui.base(),
                                      canonical_Q(fi, ui) / ui.base()};
    };
    const auto t0 = mk(0), t1 = mk(1), t2 = mk(2);
    PointwiseCoeffs out{{t0[0], t1[0], t2[0]}, {t0[1], t1[1], t2[1]}, {t0[2], t1[2], t2[2]},
                        {{{t0[1] * t0[2], t0[1] * t1[2], t0[1] * t2[2]},
                          {t1[1] * t0[2], t1[1] * t1[2], t1[1] * t2[2]},
                          {t2[1] * t0[2], t2[1] * t1[2], t2[1] * t2[2]}}}};
    return out;
}

std::array<std::pair<Profile, Profile>, 3> m3_geodesic_rhs(const TripleState& s) {
    const PointwiseCoeffs pc = pointwise_coeffs(s);
    std::array<std::pair<Profile, Profile>, 3> out{
        std::pair<Profile, Profile>{s.f[0].base(), s.f[0].base()},
        std::pair<Profile, Profile>{s.f[1].base(), s.f[1].base()},
        std::pair<Profile, Profile>{s.f[2].base(), s.f[2].base()}};
    for (std::size_t i = 0; i < 3; ++i) {
        const Profile ut = (2.0 * pc.a[i] * pc.c[i] - pc.b[i] * pc.c[i] * pc.c[i]) * s.u[i].base();
        out[i] = {s.f[i].base(), derivative(ut)};
    }
    return out;
}

std::array<std::pair<Profile, Profile>, 3> m3tilde_geodesic_rhs(const TripleState& s) {
    const PointwiseCoeffs pc = pointwise_coeffs(s);
    const Grid grid = s.grid();
    std::array<std::pair<Profile, Profile>, 3> out{
        std::pair<Profile, Profile>{s.f[0].base(), s.f[0].base()},
        std::pair<Profile, Profile>{s.f[1].base(), s.f[1].base()},
        std::pair<Profile, Profile>{s.f[2].base(), s.f[2].base()}};
    for (std::size_t i = 0; i < 3; ++i) {
        Profile acc = Profile::zero(grid);
        for (std::size_t j = 0; j < 3; ++j) {
            const double eps = (i == j) ? 1.0 : -1.0;
            Profile bsum = Profile::zero(grid);
            for (std::size_t k = 0; k < 3; ++k)
                if (k != i) bsum += pc.b[k];
            acc += eps * (pc.a[j] * pc.c[i] + pc.a[j] * pc.c[j] + 0.5 * (pc.c[j] * pc.c[j]) * bsum -
                          (pc.c[j] * pc.c[j]) * pc.b[j]);
        }
        out[i] = {s.f[i].base(), derivative(acc * s.u[i].base())};
    }
    return out;
}

double m3_hessian(const TripleState& s, const std::array<WeightFn, 3>& chi) {
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!chi[i].concave())
            throw std::invalid_argument("m3_hessian: weight '" + chi[i].name() + "' is not concave");
        const Profile K = transport_K(s.f[i], s.u[i]);
        Profile dens = K * K;
        for (std::uint32_t k = 0; k < dens.n(); ++k) dens[k] *= chi[i].chi_uu(s.u[i][k]);
        total += integrate(dens);
    }
    return total;
}

namespace {

template <class Rhs>
std::vector<TripleState> integrate_triple(const TripleState& s0, double t_final, double dt, Rhs&& rhs) {
    if (t_final < 0.0 || dt <= 0.0) throw std::invalid_argument("triple ivp: need t_final >= 0, dt > 0");
    std::vector<TripleState> out;
    out.push_back(s0);
    // plain arrays for the RK4 stages
    std::array<Profile, 3> u{s0.u[0].base(), s0.u[1].base(), s0.u[2].base()};
    std::array<Profile, 3> f{s0.f[0].base(), s0.f[1].base(), s0.f[2].base()};
    const auto mkstate = [](const std::array<Profile, 3>& uu, const std::array<Profile, 3>& ff) {
        return TripleState({PositiveProfile(uu[0]), PositiveProfile(uu[1]), PositiveProfile(uu[2])},
                           {TangentProfile(ff[0], 1e-8), TangentProfile(ff[1], 1e-8), TangentProfile(ff[2], 1e-8)});
    };
    double t = 0.0;
    while (t < t_final - 1e-12) {
        const double h = std::min(dt, t_final - t);
        const auto k1 = rhs(mkstate(u, f));
        std::array<Profile, 3> u2 = u, f2 = f;
        for (std::size_t i = 0; i < 3; ++i) {
            u2[i] += 0.5 * h * k1[i].first;
            f2[i] += 0.5 * h * k1[i].second;
        }
        const auto k2 = rhs(mkstate(u2, f2));
        std::array<Profile, 3> u3 = u, f3 = f;
        for (std::size_t i = 0; i < 3; ++i) {
            u3[i] += 0.5 * h * k2[i].first;
            f3[i] += 0.5 * h * k2[i].second;
        }
        const auto k3 = rhs(mkstate(u3, f3));
        std::array<Profile, 3> u4 = u, f4 = f;
        for (std::size_t i = 0; i < 3; ++i) {
            u4[i] += h * k3[i].first;
            f4[i] += h * k3[i].second;
        }
        const auto k4 = rhs(mkstate(u4, f4));
        for (std::size_t i = 0; i < 3; ++i) {
            u[i] += (h / 6.0) * (k1[i].first + 2.0 * k2[i].first + 2.0 * k3[i].first + k4[i].first);
            f[i] += (h / 6.0) * (k1[i].second + 2.0 * k2[i].second + 2.0 * k3[i].second + k4[i].second);
            if (u[i].min() < kPositivityFloor) throw PositivityLost("triple ivp: positivity lost");
        }
        t += h;
        out.push_back(mkstate(u, f));
    }
    return out;
}

}  // namespace

std::vector<TripleState> m3_geodesic_ivp(const TripleState& s0, double t_final, double dt) {
    return integrate_triple(s0, t_final, dt, [](const TripleState& s) { return m3_geodesic_rhs(s); });
}

std::vector<TripleState> m3tilde_geodesic_ivp(const TripleState& s0, double t_final, double dt) {
    return integrate_triple(s0, t_final, dt, [](const TripleState& s) { return m3tilde_geodesic_rhs(s); });
}

std::pair<double, double> rs_from_chi(const WeightFn& chi, double u_value) {
    if (u_value <= 0.0) throw std::invalid_argument("rs_from_chi: u must be positive");
    const double r = chi.chi_uu(u_value);
    return {r, r + chi.chi_u(u_value) / u_value};
}

// ---- expanded quadratic form (literal transcription) ---------------------------

double q_expanded(const std::array<double, 12>& x, double r, double s) {
    const double a1 = x[0], a2 = x[1], a3 = x[2];
    const double b11 = x[3], b12 = x[4], b13 = x[5];
    const double b21 = x[6], b22 = x[7], b23 = x[8];
    const double b31 = x[9], b32 = x[10], b33 = x[11];
    const double rs = r - s;
    return r * (a1 * a1 + a2 * a2 + a3 * a3) + 2.0 * s * (a1 * a2 + a2 * a3 + a1 * a3) +
           rs * (b11 * b11 + b22 * b22 + b33 * b33) +
           (-2.0 * rs * a1 * b11 + s * a1 * b12 + s * a1 * b13) +
           (rs * a1 * b21 + r * a1 * b22 + s * a1 * b23) +
           (rs * a1 * b31 + s * a1 * b32 + r * a1 * b33) +
           (r * a2 * b11 + rs * a2 * b12 + s * a2 * b13) +
           (s * a2 * b21 - 2.0 * rs * a2 * b22 + s * a2 * b23) +
           (s * a2 * b31 + rs * a2 * b32 + r * a2 * b33) +
           (r * a3 * b11 + s * a3 * b12 + rs * a3 * b13) +
           (s * a3 * b21 + r * a3 * b22 + rs * a3 * b23) +
           (s * a3 * b31 + s * a3 * b32 - 2.0 * rs * a3 * b33) +
           rs * (-b11 * b21 - b12 * b22 + b13 * b23) +
           rs * (-b11 * b31 + b12 * b32 - b13 * b33) +
           rs * (b21 * b31 - b22 * b32 - b23 * b33);
}

namespace {

// 2*A entries as integer combinations (CR2*r + CS2*s)/2, derived by
// symmetrizing the expanded quadratic form; ordering a1,a2,a3,b11..b33.
constexpr int CR2[12][12] = {
    {2, 0, 0, -2, 0, 0, 1, 1, 0, 1, 0, 1},
    {0, 2, 0, 1, 1, 0, 0, -2, 0, 0, 1, 1},
    {0, 0, 2, 1, 0, 1, 0, 1, 1, 0, 0, -2},
    {-2, 1, 1, 2, 0, 0, -1, 0, 0, -1, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0},
    {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1},
    {1, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0},
    {1, -2, 1, 0, -1, 0, 0, 2, 0, 0, -1, 0},
    {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1},
    {1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0},
    {1, 1, -2, 0, 0, -1, 0, 0, -1, 0, 0, 2},
};
constexpr int CS2[12][12] = {
    {0, 2, 2, 2, 1, 1, -1, 0, 1, -1, 1, 0},
    {2, 0, 2, 0, -1, 1, 1, 2, 1, 1, -1, 0},
    {2, 2, 0, 0, 1, -1, 1, 0, -1, 1, 1, 2},
    {2, 0, 0, -2, 0, 0, 1, 0, 0, 1, 0, 0},
    {1, -1, 1, 0, 0, 0, 0, 1, 0, 0, -1, 0},
    {1, 1, -1, 0, 0, 0, 0, 0, -1, 0, 0, 1},
    {-1, 1, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0},
    {0, 2, 0, 0, 1, 0, 0, -2, 0, 0, 1, 0},
    {1, 1, -1, 0, 0, -1, 0, 0, 0, 0, 0, 1},
    {-1, 1, 1, 1, 0, 0, -1, 0, 0, 0, 0, 0},
    {1, -1, 1, 0, -1, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 2, 0, 0, 1, 0, 0, 1, 0, 0, -2},
};

}  // namespace

SymMatrix build_matrix_A(double r, double s) {
    SymMatrix a(12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = i; j < 12; ++j) a.set(i, j, 0.5 * (CR2[i][j] * r + CS2[i][j] * s));
    return a;
}

std::vector<std::vector<Rational>> build_matrix_A_exact(const Rational& r, const Rational& s) {
    std::vector<std::vector<Rational>> a(12, std::vector<Rational>(12));
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            a[i][j] = (Rational(CR2[i][j]) * r + Rational(CS2[i][j]) * s) * Rational(1, 2);
    return a;
}

NsdCertificate nsd_certificate(const SymMatrix& a) {
    const EigenDecomposition e = jacobi_eigen(a);
    NsdCertificate out;
    out.eigenvalues = e.values;
    out.lambda_max = e.values.back();
    out.witness = e.vectors.back();
    out.eigen_residual = eigen_residual(a, out.witness, out.lambda_max);
    out.not_nsd = out.lambda_max > 1e-10;
    return out;
}

// ---- second variation on M3-tilde ------------------------------------------------

double m3tilde_vtt(const TripleState& st, const WeightFn& chi) {
    const PointwiseCoeffs pc = pointwise_coeffs(st);
    const std::uint32_t n = st.grid().n();
    double acc = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        const double u = st.u[0][k] * st.u[1][k] * st.u[2][k];
        const auto [r, s] = rs_from_chi(chi, u);
        const std::array<double, 12> x{pc.a[0][k],      pc.a[1][k],      pc.a[2][k],      pc.bij[0][0][k],
                                       pc.bij[0][1][k], pc.bij[0][2][k], pc.bij[1][0][k], pc.bij[1][1][k],
                                       pc.bij[1][2][k], pc.bij[2][0][k], pc.bij[2][1][k], pc.bij[2][2][k]};
        acc += u * u * q_expanded(x, r, s);
    }
    return acc / n;
}

double m3tilde_vtt_lemma(const TripleState& st, const WeightFn& chi) {
    const PointwiseCoeffs pc = pointwise_coeffs(st);
    const std::uint32_t n = st.grid().n();
    const Grid grid = st.grid();
    std::array<Profile, 3> ut_over_u{Profile::zero(grid), Profile::zero(grid), Profile::zero(grid)};
    for (std::size_t i = 0; i < 3; ++i) {
        Profile acc = Profile::zero(grid);
        for (std::size_t j = 0; j < 3; ++j) {
            const double eps = (i == j) ? 1.0 : -1.0;
            Profile bsum = Profile::zero(grid);
            for (std::size_t k = 0; k < 3; ++k)
                if (k != i) bsum += pc.b[k];
            acc += eps * (pc.a[j] * pc.c[i] + pc.a[j] * pc.c[j] + 0.5 * (pc.c[j] * pc.c[j]) * bsum -
                          (pc.c[j] * pc.c[j]) * pc.b[j]);
        }
        ut_over_u[i] = acc;
    }
    double total = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        const double u = st.u[0][k] * st.u[1][k] * st.u[2][k];
        const auto [r, s] = rs_from_chi(chi, u);
        const double a1 = pc.a[0][k], a2 = pc.a[1][k], a3 = pc.a[2][k];
        double val = r * (a1 * a1 + a2 * a2 + a3 * a3) + 2.0 * s * (a1 * a2 + a2 * a3 + a1 * a3);
        for (std::size_t i = 0; i < 3; ++i) {
            double bsum = 0.0;
            for (std::size_t l = 0; l < 3; ++l)
                if (l != i) bsum += pc.b[l][k];
            val -= (r * pc.b[i][k] + s * bsum) * ut_over_u[i][k];
        }
        total += u * u * val;
    }
    return total / n;
}

// ---- non-concavity search ---------------------------------------------------------

namespace {

// parameter layout: for each component i: u-modes (a_i1 cos + b_i1 sin),
// f-modes (c_i1 cos + d_i1 sin, c_i2 cos2 + d_i2 sin2) -> 3*(2 + 4) = 18 params
constexpr int kParamsPerComponent = 6;
constexpr int kNumParams = 3 * kParamsPerComponent;

TripleState state_from(const std::vector<double>& p, Grid grid) {
    std::array<std::optional<PositiveProfile>, 3> us;
    std::array<std::optional<TangentProfile>, 3> fs;
    for (int i = 0; i < 3; ++i) {
        const double* q = p.data() + i * kParamsPerComponent;
        Profile u = Profile::sample(grid, [&](double x) {
            const double c = std::cos(2 * std::numbers::pi * x), s = std::sin(2 * std::numbers::pi * x);
            return 1.0 + q[0] * c + q[1] * s;
        });
        // positivity projection: cap the mode amplitude
        const double amp = std::hypot(q[0], q[1]);
        if (amp > 0.85) u = Profile::sample(grid, [&](double x) {
                const double c = std::cos(2 * std::numbers::pi * x), s = std::sin(2 * std::numbers::pi * x);
                return 1.0 + (0.85 / amp) * (q[0] * c + q[1] * s);
            });
        Profile f = Profile::sample(grid, [&](double x) {
            const double c1 = std::cos(2 * std::numbers::pi * x), s1 = std::sin(2 * std::numbers::pi * x);
            const double c2 = std::cos(4 * std::numbers::pi * x), s2 = std::sin(4 * std::numbers::pi * x);
            return q[2] * c1 + q[3] * s1 + q[4] * c2 + q[5] * s2;
        });
        us[static_cast<std::size_t>(i)].emplace(std::move(u));
        fs[static_cast<std::size_t>(i)].emplace(std::move(f), 1e-9);
    }
    return TripleState({*us[0], *us[1], *us[2]}, {*fs[0], *fs[1], *fs[2]});
}

}  // namespace

TripleState search_state_from_params(const std::vector<double>& params, Grid grid) {
    if (params.size() != kNumParams) throw std::invalid_argument("search params: wrong size");
    return state_from(params, grid);
}

SearchReport nonconcavity_search(const WeightFn& chi, std::uint32_t n, std::uint64_t seed, int budget) {
    const Grid grid(n);
    SplitMix64 rng(seed);
    int evals = 0;
    const auto objective = [&](const std::vector<double>& p) {
        ++evals;
        return m3tilde_vtt(state_from(p, grid), chi);
    };

    // eigen-witness seed: lift the lambda_max eigenvector at u = 1
    const auto [r1, s1] = rs_from_chi(chi, 1.0);
    const NsdCertificate cert = nsd_certificate(build_matrix_A(r1, s1));
    std::vector<double> p0(kNumParams, 0.0);
    for (int i = 0; i < 3; ++i) {
        const auto& w = cert.witness;
        p0[static_cast<std::size_t>(i * kParamsPerComponent + 0)] = 0.2 * w[static_cast<std::size_t>(3 + 4 * i)];
        p0[static_cast<std::size_t>(i * kParamsPerComponent + 2)] = 0.4 * w[static_cast<std::size_t>(i)];
        p0[static_cast<std::size_t>(i * kParamsPerComponent + 5)] = 0.1 * w[static_cast<std::size_t>(3 + i)];
    }
    double best = objective(p0);
    const double seed_value = best;
    std::vector<double> best_p = p0;

    SearchReport rep{best, best_p, evals, false, seed_value};
    if (budget <= 0) return rep;

    // multistart + coordinate ascent with shrinking steps
    std::vector<double> cur = p0;
    double cur_val = best;
    double step = 0.15;
    while (evals < budget) {
        bool improved = false;
        for (int k = 0; k < kNumParams && evals + 2 <= budget; ++k) {
            for (double sgn : {+1.0, -1.0}) {
                std::vector<double> trial = cur;
                trial[static_cast<std::size_t>(k)] += sgn * step;
                const double v = objective(trial);
                if (v > cur_val) {
                    cur = std::move(trial);
                    cur_val = v;
                    improved = true;
                    break;
                }
            }
        }
        if (cur_val > best) {
            best = cur_val;
            best_p = cur;
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-4) {
                // restart from a random point
                if (evals >= budget) break;
                for (auto& x : cur) x = rng.uniform(-0.3, 0.3);
                cur_val = objective(cur);
                step = 0.15;
            }
        }
        if (evals >= budget) {
            rep.budget_exhausted = true;
            break;
        }
    }
    rep.best_value = best;
    rep.best_params = best_p;
    rep.evaluations = evals;
    return rep;
}

// ---- volume upper bound -------------------------------------------------------------

VolumeBoundReport volume_bound_check(const std::array<std::array<Profile, 3>, 3>& q) {
    const Grid grid = q[0][0].grid();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            require_same_grid(q[0][0], q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            Profile d = q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                        q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (d.sup_norm() > 0) throw std::invalid_argument("volume_bound_check: matrix not symmetric");
        }
    VolumeBoundReport rep{0.0, 0.0, 0.0, true, 0.0};
    double lhs = 0.0, rhs = 0.0;
    for (std::uint32_t k = 0; k < grid.n(); ++k) {
        const double a = q[0][0][k], b = q[0][1][k], c = q[0][2][k];
        const double d = q[1][1][k], e = q[1][2][k], f = q[2][2][k];
        const double det = a * (d * f - e * e) - b * (b * f - c * e) + c * (b * e - c * d);
        const double m2 = a * d - b * b;
        if (a <= 0.0 || m2 <= 0.0 || det <= 0.0) rep.positive_definite = false;
        const double tr = a + d + f;
        lhs += 3.0 * std::cbrt(det);
        rhs += tr;
        const double t3 = tr / 3.0;
        double aniso = std::max({std::abs(a - t3), std::abs(d - t3), std::abs(f - t3), std::abs(b), std::abs(c),
                                 std::abs(e)});
        rep.max_anisotropy = std::max(rep.max_anisotropy, aniso);
    }
    if (!rep.positive_definite) throw std::invalid_argument("volume_bound_check: matrix not positive definite");
    rep.lhs = lhs / grid.n();
    rep.rhs = rhs / grid.n();
    rep.slack = rep.rhs - rep.lhs;
    return rep;
}

}  // namespace g2flow
