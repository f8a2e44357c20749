#include "g2flow/rng.hpp"

#include <cmath>
#include <numbers>

namespace g2flow {

Profile random_tangent(Grid grid, SplitMix64& rng, int kmax, double amp) {
    std::vector<double> a(static_cast<std::size_t>(kmax) + 1), b(static_cast<std::size_t>(kmax) + 1);
    for (int k = 1; k <= kmax; ++k) {
        a[static_cast<std::size_t>(k)] = rng.uniform(-amp, amp) / k;
        b[static_cast<std::size_t>(k)] = rng.uniform(-amp, amp) / k;
    }
    return Profile::sample(grid, [&](double x) {
        double s = 0.0;
        for (int k = 1; k <= kmax; ++k) {
            const double ang = 2.0 * std::numbers::pi * k * x;
            s += a[static_cast<std::size_t>(k)] * std::cos(ang) + b[static_cast<std::size_t>(k)] * std::sin(ang);
        }
        return s;
    });
}

PositiveProfile random_positive(Grid grid, SplitMix64& rng, int kmax, double amp, bool unit_mass) {
    Profile pert = random_tangent(grid, rng, kmax, amp);
    const double sup = pert.sup_norm();
    if (sup > 0.9) pert *= 0.9 / sup;  // keep u well away from zero
    Profile u = pert;
    for (std::uint32_t k = 0; k < u.n(); ++k) u[k] += 1.0;
    if (unit_mass) u *= 1.0 / integrate(u);
    return PositiveProfile(std::move(u));
}

}  // namespace g2flow
