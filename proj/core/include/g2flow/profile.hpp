#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2flow {

// Numerical failures map to CLI exit code 2.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShockDetected : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct PositivityLost : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct StiffnessAbort : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct MassMismatch : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct DegenerateDensity : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kPositivityFloor = 1e-8;

// Uniform grid on the unit circle R/Z, samples at x_k = k/n.
class Grid {
  public:
    explicit Grid(std::uint32_t n) : n_(n) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 16, got " + std::to_string(n));
    }
    std::uint32_t n() const { return n_; }
    double x(std::uint32_t k) const { return static_cast<double>(k) / n_; }
    bool operator==(const Grid& o) const { return n_ == o.n_; }
    bool operator!=(const Grid& o) const { return n_ != o.n_; }

  private:
    std::uint32_t n_;
};

// Real-valued function on the circle, sampled on a uniform grid.
class Profile {
  public:
    Profile(Grid grid, std::vector<double> values) : grid_(grid), v_(std::move(values)) {
        if (v_.size() != grid_.n()) throw std::invalid_argument("Profile: size does not match grid");
        for (double x : v_)
            if (!std::isfinite(x)) throw std::invalid_argument("Profile: non-finite sample");
    }
    static Profile constant(Grid grid, double c) { return Profile(grid, std::vector<double>(grid.n(), c)); }
    static Profile zero(Grid grid) { return constant(grid, 0.0); }

    // samples f at the grid points
    template <class F>
    static Profile sample(Grid grid, F&& f) {
        std::vector<double> v(grid.n());
        for (std::uint32_t k = 0; k < grid.n(); ++k) v[k] = f(grid.x(k));
        return Profile(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    std::uint32_t n() const { return grid_.n(); }
    double operator[](std::uint32_t k) const { return v_[k]; }
    double& operator[](std::uint32_t k) { return v_[k]; }
    const std::vector<double>& values() const { return v_; }

    double min() const;
    double max() const;
    double sup_norm() const;

    Profile& operator+=(const Profile& o);
    Profile& operator-=(const Profile& o);
    Profile& operator*=(const Profile& o);
    Profile& operator*=(double c);

    friend Profile operator+(Profile a, const Profile& b) { return a += b; }
    friend Profile operator-(Profile a, const Profile& b) { return a -= b; }
    friend Profile operator*(Profile a, const Profile& b) { return a *= b; }
    friend Profile operator*(Profile a, double c) { return a *= c; }
    friend Profile operator*(double c, Profile a) { return a *= c; }
    friend Profile operator-(Profile a) { return a *= -1.0; }

  private:
    Grid grid_;
    std::vector<double> v_;
};

void require_same_grid(const Profile& a, const Profile& b);

// pointwise u^p
Profile pow(const Profile& u, double p);
// pointwise a/b
Profile operator/(const Profile& a, const Profile& b);
Profile operator/(double c, const Profile& b);

// Rectangle-rule quadrature over one period; exact for trigonometric
// polynomials of degree < n/2.
double integrate(const Profile& p);
inline double mean(const Profile& p) { return integrate(p); }

// Strictly positive profile; caches the mass. `normalized` additionally
// asserts unit mass at construction.
class PositiveProfile {
  public:
    explicit PositiveProfile(Profile p, bool require_unit_mass = false);
    const Profile& base() const { return p_; }
    operator const Profile&() const { return p_; }
    double mass() const { return mass_; }
    const Grid& grid() const { return p_.grid(); }
    std::uint32_t n() const { return p_.n(); }
    double operator[](std::uint32_t k) const { return p_[k]; }

  private:
    Profile p_;
    double mass_;
};

// Zero-mean profile (tangent direction f with \int f = 0).
class TangentProfile {
  public:
    explicit TangentProfile(Profile p, double tol = 1e-12);
    const Profile& base() const { return p_; }
    operator const Profile&() const { return p_; }
    const Grid& grid() const { return p_.grid(); }

  private:
    Profile p_;
};

}  // namespace g2flow
