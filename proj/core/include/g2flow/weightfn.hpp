#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace g2flow {

// Weight chi for the weighted volume functionals and chi flows.
// Built-ins: power:p (chi = y^p), hitchin (3 y^{1/3}), heat (y(1-log y)),
// linear (y; the flow degenerates to zero).
class WeightFn {
  public:
    enum class Kind { Power, Hitchin, Heat, Linear };

    static WeightFn power(double p) {
        if (p <= 0.0) throw std::invalid_argument("WeightFn: power exponent must be positive");
        return WeightFn(Kind::Power, p);
    }
    static WeightFn hitchin() { return WeightFn(Kind::Hitchin, 1.0 / 3.0); }
    static WeightFn heat() { return WeightFn(Kind::Heat, 0.0); }
    static WeightFn linear() { return WeightFn(Kind::Linear, 0.0); }
    // "power:p" | "hitchin" | "heat" | "linear"
    static WeightFn parse(const std::string& spec);

    double chi(double y) const {
        switch (kind_) {
            case Kind::Power: return std::pow(y, p_);
            case Kind::Hitchin: return 3.0 * std::cbrt(y);
            case Kind::Heat: return y * (1.0 - std::log(y));
            case Kind::Linear: return y;
        }
        return 0.0;
    }
    double chi_u(double y) const {
        switch (kind_) {
            case Kind::Power: return p_ * std::pow(y, p_ - 1.0);
            case Kind::Hitchin: return std::pow(y, -2.0 / 3.0);
            case Kind::Heat: return -std::log(y);
            case Kind::Linear: return 1.0;
        }
        return 0.0;
    }
    double chi_uu(double y) const {
        switch (kind_) {
            case Kind::Power: return p_ * (p_ - 1.0) * std::pow(y, p_ - 2.0);
            case Kind::Hitchin: return -(2.0 / 3.0) * std::pow(y, -5.0 / 3.0);
            case Kind::Heat: return -1.0 / y;
            case Kind::Linear: return 0.0;
        }
        return 0.0;
    }

    // concave on (0, inf)?
    bool concave() const {
        switch (kind_) {
            case Kind::Power: return p_ <= 1.0;
            case Kind::Hitchin:
            case Kind::Heat:
            case Kind::Linear: return true;
        }
        return false;
    }
    Kind kind() const { return kind_; }
    double exponent() const { return p_; }
    std::string name() const {
        switch (kind_) {
            case Kind::Power: return "power:" + std::to_string(p_);
            case Kind::Hitchin: return "hitchin";
            case Kind::Heat: return "heat";
            case Kind::Linear: return "linear";
        }
        return "?";
    }

  private:
    WeightFn(Kind k, double p) : kind_(k), p_(p) {}
    Kind kind_;
    double p_;
};

inline WeightFn WeightFn::parse(const std::string& spec) {
    if (spec == "hitchin") return hitchin();
    if (spec == "heat") return heat();
    if (spec == "linear") return linear();
    if (spec.rfind("power:", 0) == 0) {
        const std::string arg = spec.substr(6);
        std::size_t pos = 0;
        const double p = std::stod(arg, &pos);
        if (pos != arg.size()) throw std::invalid_argument("WeightFn: bad exponent '" + arg + "'");
        return power(p);
    }
    throw std::invalid_argument("WeightFn: unknown chi spec '" + spec + "'");
}

}  // namespace g2flow
