#include "g2flow/profile.hpp"

#include <algorithm>
#include <numeric>

namespace g2flow {

void require_same_grid(const Profile& a, const Profile& b) {
    if (a.grid() != b.grid())
        throw GridMismatch("profiles live on different grids (" + std::to_string(a.n()) + " vs " +
                           std::to_string(b.n()) + ")");
}

double Profile::min() const { return *std::min_element(v_.begin(), v_.end()); }
double Profile::max() const { return *std::max_element(v_.begin(), v_.end()); }
double Profile::sup_norm() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

Profile& Profile::operator+=(const Profile& o) {
    require_same_grid(*this, o);
    for (std::uint32_t k = 0; k < n(); ++k) v_[k] += o.v_[k];
    return *this;
}
Profile& Profile::operator-=(const Profile& o) {
    require_same_grid(*this, o);
    for (std::uint32_t k = 0; k < n(); ++k) v_[k] -= o.v_[k];
    return *this;
}
Profile& Profile::operator*=(const Profile& o) {
    require_same_grid(*this, o);
    for (std::uint32_t k = 0; k < n(); ++k) v_[k] *= o.v_[k];
    return *this;
}
Profile& Profile::operator*=(double c) {
    for (double& x : v_) x *= c;
    return *this;
}

Profile pow(const Profile& u, double p) {
    std::vector<double> v(u.n());
    for (std::uint32_t k = 0; k < u.n(); ++k) v[k] = std::pow(u[k], p);
    return Profile(u.grid(), std::move(v));
}

Profile operator/(const Profile& a, const Profile& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.n());
    for (std::uint32_t k = 0; k < a.n(); ++k) v[k] = a[k] / b[k];
    return Profile(a.grid(), std::move(v));
}

Profile operator/(double c, const Profile& b) {
    std::vector<double> v(b.n());
    for (std::uint32_t k = 0; k < b.n(); ++k) v[k] = c / b[k];
    return Profile(b.grid(), std::move(v));
}

double integrate(const Profile& p) {
    // pairwise-stable enough at n <= 4096; rectangle rule on uniform grid
    double s = std::accumulate(p.values().begin(), p.values().end(), 0.0);
    return s / p.n();
}

PositiveProfile::PositiveProfile(Profile p, bool require_unit_mass) : p_(std::move(p)), mass_(integrate(p_)) {
    if (p_.min() <= 0.0) throw PositivityLost("PositiveProfile: min value " + std::to_string(p_.min()) + " <= 0");
    if (require_unit_mass && std::abs(mass_ - 1.0) >= 1e-12)
        throw MassMismatch("PositiveProfile: mass " + std::to_string(mass_) + " != 1");
}

TangentProfile::TangentProfile(Profile p, double tol) : p_(std::move(p)) {
    const double m = integrate(p_);
    if (std::abs(m) >= tol)
        throw std::invalid_argument("TangentProfile: mean " + std::to_string(m) + " exceeds tolerance");
}

}  // namespace g2flow
