#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "g2flow/profile.hpp"
#include "g2flow/rational.hpp"
#include "g2flow/spectral.hpp"

// Exterior algebra of differential forms on T^3 x T^4 whose coefficients
// depend on x0 only.  Axis order t1 < t2 < t3 < x0 < x1 < x2 < x3; the
// orientation dtheta^123 ^ dx^0123 is positive.  The induced metric of the
// closed structure is diagonal, g_i = w^{e_i} with w = u^{1/3} and
// e = (-1,-1,2, 2,-1,-1,2), so all metric factors are powers of w.
//
// Templated over the coefficient ring: Profile for numerics, Rational for
// the exact constant-coefficient identity mode.

namespace g2flow {

enum Axis : int { T1 = 0, T2 = 1, T3 = 2, X0 = 3, X1 = 4, X2 = 5, X3 = 6 };

inline constexpr std::array<int, 7> kMetricExp = {-1, -1, 2, 2, -1, -1, 2};
inline constexpr const char* kAxisName[7] = {"t1", "t2", "t3", "x0", "x1", "x2", "x3"};

using AxisMask = std::uint8_t;
inline constexpr AxisMask kAllAxes = 0x7F;
inline constexpr AxisMask kXAxes = 0b1111000;  // x0..x3
inline constexpr AxisMask kThetaAxes = 0b0000111;

inline int mask_degree(AxisMask m) { return std::popcount(m); }

// sign of the permutation sorting idx (distinct entries)
inline int perm_sign(const int* idx, int len) {
    int s = 1;
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j)
            if (idx[i] > idx[j]) s = -s;
    return s;
}

// sign of merging two sorted disjoint masks (a then b) into sorted order
inline int merge_sign(AxisMask a, AxisMask b) {
    int s = 1;
    for (int i = 0; i < 7; ++i) {
        if (!(b & (1 << i))) continue;
        const int cnt = std::popcount(static_cast<unsigned>(a >> (i + 1)));
        if (cnt & 1) s = -s;
    }
    return s;
}

// ---- coefficient ring adapters ---------------------------------------------

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Profile> {
    static bool is_zero(const Profile& c) { return c.sup_norm() == 0.0; }
    static Profile neg(const Profile& c) { return -c; }
    static Profile d(const Profile& c) { return derivative(c); }
    static double sup(const Profile& c) { return c.sup_norm(); }
    static void scale(Profile& c, long num, long den) { c *= static_cast<double>(num) / static_cast<double>(den); }
};

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& c) { return c.is_zero(); }
    static Rational neg(const Rational& c) { return -c; }
    static Rational d(const Rational&) { return Rational(0); }  // constants only
    static double sup(const Rational& c) { return std::abs(c.to_double()); }
    static void scale(Rational& c, long num, long den) { c *= Rational(num, den); }
};

// ---- diagonal G2 metric ------------------------------------------------------

template <class C>
class DiagMetric;

template <>
class DiagMetric<Profile> {
  public:
    explicit DiagMetric(const PositiveProfile& u) : u_(u) {
        pw_.reserve(13);
        for (int k = -6; k <= 6; ++k) pw_.push_back(pow(u.base(), k / 3.0));
    }
    const Profile& w_pow(int k) const { return pw_[static_cast<std::size_t>(k + 6)]; }
    const PositiveProfile& u() const { return u_; }
    const Grid& grid() const { return u_.grid(); }

  private:
    PositiveProfile u_;
    std::vector<Profile> pw_;
};

template <>
class DiagMetric<Rational> {
  public:
    // w must be rational with u = w^3 (w = 1 is the flat hyper-Kaehler case)
    explicit DiagMetric(Rational w) {
        pw_[6] = Rational(1);
        for (int k = 1; k <= 6; ++k) {
            pw_[6 + k] = pw_[6 + k - 1] * w;
            pw_[6 - k] = Rational(1) / pw_[6 + k];
        }
    }
    const Rational& w_pow(int k) const { return pw_[static_cast<std::size_t>(k + 6)]; }

  private:
    std::array<Rational, 13> pw_{};
};

// ---- forms -------------------------------------------------------------------

template <class C>
class FormT {
  public:
    explicit FormT(int degree) : degree_(degree) {
        if (degree < 0 || degree > 7) throw std::invalid_argument("FormT: degree out of range");
    }

    int degree() const { return degree_; }
    const std::map<AxisMask, C>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // add c * e_{axes in the listed order} (sign-normalized into sorted basis)
    void add_term(std::initializer_list<int> axes, C c) {
        std::vector<int> idx(axes);
        add_term_idx(idx.data(), static_cast<int>(idx.size()), std::move(c));
    }
    void add_term_idx(const int* idx, int len, C c) {
        if (len != degree_) throw std::invalid_argument("FormT: term degree mismatch");
        AxisMask m = 0;
        for (int i = 0; i < len; ++i) {
            if (m & (1 << idx[i])) return;  // repeated axis
            m |= static_cast<AxisMask>(1 << idx[i]);
        }
        if (perm_sign(idx, len) < 0) c = CoeffOps<C>::neg(c);
        add_mask(m, std::move(c));
    }
    void add_mask(AxisMask m, C c) {
        if (mask_degree(m) != degree_) throw std::invalid_argument("FormT: mask degree mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!CoeffOps<C>::is_zero(c)) terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
        }
    }

    const C* coeff(AxisMask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? nullptr : &it->second;
    }

    FormT& operator+=(const FormT& o) {
        check_degree(o);
        for (const auto& [m, c] : o.terms_) add_mask(m, c);
        return *this;
    }
    FormT& operator-=(const FormT& o) {
        check_degree(o);
        for (const auto& [m, c] : o.terms_) add_mask(m, CoeffOps<C>::neg(c));
        return *this;
    }
    friend FormT operator+(FormT a, const FormT& b) { return a += b; }
    friend FormT operator-(FormT a, const FormT& b) { return a -= b; }
    friend FormT operator-(FormT a) {
        a.negate();
        return a;
    }

    void negate() {
        for (auto& [m, c] : terms_) c = CoeffOps<C>::neg(c);
    }
    // exact rational scaling (num/den)
    void scale(long num, long den = 1) {
        if (num == 0) {
            terms_.clear();
            return;
        }
        for (auto& [m, c] : terms_) CoeffOps<C>::scale(c, num, den);
    }
    // multiply every coefficient by a ring element
    void mult_coeff(const C& f) {
        for (auto& [m, c] : terms_) c = c * f;
        prune();
    }

    double sup_norm() const {
        double r = 0.0;
        for (const auto& [m, c] : terms_) r = std::max(r, CoeffOps<C>::sup(c));
        return r;
    }

  private:
    void check_degree(const FormT& o) const {
        if (o.degree_ != degree_) throw std::invalid_argument("FormT: degree mismatch");
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = CoeffOps<C>::is_zero(it->second) ? terms_.erase(it) : std::next(it);
    }
    int degree_;
    std::map<AxisMask, C> terms_;
};

using MultiForm = FormT<Profile>;
using RationalForm = FormT<Rational>;

template <class C>
FormT<C> wedge(const FormT<C>& a, const FormT<C>& b) {
    if (a.degree() + b.degree() > 7) throw std::invalid_argument("wedge: degree overflow");
    FormT<C> out(a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            C c = ca * cb;
            if (merge_sign(ma, mb) < 0) c = CoeffOps<C>::neg(c);
            out.add_mask(static_cast<AxisMask>(ma | mb), std::move(c));
        }
    return out;
}

// d = dx0 ^ d/dx0 (coefficients depend on x0 only); d∘d = 0 identically
template <class C>
FormT<C> exterior_d(const FormT<C>& a) {
    if (a.degree() >= 7) throw std::invalid_argument("exterior_d: degree overflow");
    FormT<C> out(a.degree() + 1);
    for (const auto& [m, c] : a.terms()) {
        if (m & (1 << X0)) continue;
        C dc = CoeffOps<C>::d(c);
        if (CoeffOps<C>::is_zero(dc)) continue;
        if (merge_sign(static_cast<AxisMask>(1 << X0), m) < 0) dc = CoeffOps<C>::neg(dc);
        out.add_mask(static_cast<AxisMask>(m | (1 << X0)), std::move(dc));
    }
    return out;
}

// interior product with the vector field coeff * d/d(axis)
template <class C>
FormT<C> interior(const FormT<C>& a, int axis, const C& coeff) {
    if (a.degree() == 0) throw std::invalid_argument("interior: degree 0");
    FormT<C> out(a.degree() - 1);
    for (const auto& [m, c] : a.terms()) {
        if (!(m & (1 << axis))) continue;
        const int pos = std::popcount(static_cast<unsigned>(m & ((1u << axis) - 1)));
        C v = c * coeff;
        if (pos & 1) v = CoeffOps<C>::neg(v);
        out.add_mask(static_cast<AxisMask>(m & ~(1 << axis)), std::move(v));
    }
    return out;
}

// Hodge star within the subspace `axes` (kAllAxes, kXAxes or kThetaAxes).
template <class C>
FormT<C> hodge_star(const FormT<C>& a, const DiagMetric<C>& m, AxisMask axes = kAllAxes) {
    int wexp = 0;
    for (int i = 0; i < 7; ++i)
        if (axes & (1 << i)) wexp += kMetricExp[i];
    if (wexp % 2 != 0) throw std::invalid_argument("hodge_star: unsupported subspace");
    wexp /= 2;  // volume weight w^wexp
    FormT<C> out(mask_degree(axes) - a.degree());
    for (const auto& [mk, c] : a.terms()) {
        if (mk & ~axes) throw std::invalid_argument("hodge_star: term outside subspace");
        const AxisMask comp = static_cast<AxisMask>(axes & ~mk);
        int e = wexp;
        for (int i = 0; i < 7; ++i)
            if (mk & (1 << i)) e -= kMetricExp[i];
        C v = c * m.w_pow(e);
        if (merge_sign(mk, comp) < 0) v = CoeffOps<C>::neg(v);
        out.add_mask(comp, std::move(v));
    }
    return out;
}

// 7-manifold codifferential, delta = (-1)^p * d *; anchored so that
// delta(phi) reproduces the closed-form torsion.
template <class C>
FormT<C> codifferential(const FormT<C>& a, const DiagMetric<C>& m) {
    if (a.degree() < 1) throw std::invalid_argument("codifferential: degree 0");
    FormT<C> r = hodge_star(exterior_d(hodge_star(a, m)), m);
    if (a.degree() & 1) r.negate();
    return r;
}

// X^4 codifferential (terms supported in the x-axes); the uniform +*d*
// sign is anchored by the torus connection identities.
template <class C>
FormT<C> codifferential4(const FormT<C>& a, const DiagMetric<C>& m) {
    return hodge_star(exterior_d(hodge_star(a, m, kXAxes)), m, kXAxes);
}

// pointwise inner product of equal-degree forms
template <class C>
C inner_pointwise(const FormT<C>& a, const FormT<C>& b, const DiagMetric<C>& m, C zero) {
    if (a.degree() != b.degree()) throw std::invalid_argument("inner: degree mismatch");
    C out = std::move(zero);
    for (const auto& [mk, ca] : a.terms()) {
        const C* cb = b.coeff(mk);
        if (!cb) continue;
        int e = 0;
        for (int i = 0; i < 7; ++i)
            if (mk & (1 << i)) e -= kMetricExp[i];
        out += ca * (*cb) * m.w_pow(e);
    }
    return out;
}

// component a_{idx...}: antisymmetry sign included; nullopt if absent/repeated
template <class C>
std::optional<C> component(const FormT<C>& a, const int* idx, int len) {
    AxisMask m = 0;
    for (int i = 0; i < len; ++i) {
        if (m & (1 << idx[i])) return std::nullopt;
        m |= static_cast<AxisMask>(1 << idx[i]);
    }
    const C* c = a.coeff(m);
    if (!c) return std::nullopt;
    if (perm_sign(idx, len) < 0) return CoeffOps<C>::neg(*c);
    return *c;
}

// ---- symmetric 2-tensors -------------------------------------------------

template <class C>
class Sym2T {
  public:
    explicit Sym2T(const C& zero) : h_(49, zero) {}
    const C& operator()(int i, int j) const { return h_[static_cast<std::size_t>(7 * i + j)]; }
    void set(int i, int j, const C& v) {
        h_[static_cast<std::size_t>(7 * i + j)] = v;
        h_[static_cast<std::size_t>(7 * j + i)] = v;
    }
    void accum(int i, int j, const C& v) {
        h_[static_cast<std::size_t>(7 * i + j)] += v;
        if (i != j) h_[static_cast<std::size_t>(7 * j + i)] += v;
    }
    double sup_norm() const {
        double r = 0.0;
        for (const auto& c : h_) r = std::max(r, CoeffOps<C>::sup(c));
        return r;
    }

  private:
    std::vector<C> h_;
};

using Sym2Tensor = Sym2T<Profile>;

// i_omega h = (1/(p-1)!) h_{i1 l} g^{ls} omega_{s i2..ip} dx^{i1..ip}
template <class C>
FormT<C> contract_i(const Sym2T<C>& h, const FormT<C>& omega, const DiagMetric<C>& m) {
    const int p = omega.degree();
    if (p < 1) throw std::invalid_argument("contract_i: degree 0");
    FormT<C> out(p);
    for (const auto& [mk, c] : omega.terms()) {
        int elems[7];
        int len = 0;
        for (int i = 0; i < 7; ++i)
            if (mk & (1 << i)) elems[len++] = i;
        for (int si = 0; si < len; ++si) {
            const int s = elems[si];
            const AxisMask rest = static_cast<AxisMask>(mk & ~(1 << s));
            for (int i1 = 0; i1 < 7; ++i1) {
                if (rest & (1 << i1)) continue;
                if (CoeffOps<C>::is_zero(h(i1, s))) continue;
                C v = h(i1, s) * m.w_pow(-kMetricExp[s]) * c;
                int sgn = (si & 1) ? -1 : 1;
                const int pos = std::popcount(static_cast<unsigned>(rest & ((1u << i1) - 1)));
                if (pos & 1) sgn = -sgn;
                if (sgn < 0) v = CoeffOps<C>::neg(v);
                out.add_mask(static_cast<AxisMask>(rest | (1 << i1)), std::move(v));
            }
        }
    }
    return out;
}

// j_omega eta: full Einstein sum over the shared (p-1) indices; symmetric
// in (omega, eta) and in the tensor slots.
template <class C>
Sym2T<C> contract_j(const FormT<C>& omega, const FormT<C>& eta, const DiagMetric<C>& m, const C& zero) {
    if (omega.degree() != eta.degree()) throw std::invalid_argument("contract_j: degree mismatch");
    const int p = omega.degree();
    long fact = 1;
    for (int k = 2; k < p; ++k) fact *= k;
    Sym2T<C> out(zero);
    for (const auto& [m1, c1] : omega.terms()) {
        int elems[7];
        int len = 0;
        for (int i = 0; i < 7; ++i)
            if (m1 & (1 << i)) elems[len++] = i;
        for (int ii = 0; ii < len; ++ii) {
            const int i = elems[ii];
            const AxisMask shared = static_cast<AxisMask>(m1 & ~(1 << i));
            for (const auto& [m2, c2] : eta.terms()) {
                if ((m2 & shared) != shared) continue;
                const AxisMask extra = static_cast<AxisMask>(m2 & ~shared);
                if (mask_degree(extra) != 1) continue;
                const int j = std::countr_zero(static_cast<unsigned>(extra));
                const int pos_j = std::popcount(static_cast<unsigned>(m2 & ((1u << j) - 1)));
                const int sgn = ((ii + pos_j) & 1) ? -1 : 1;
                int ge = 0;
                for (int a = 0; a < 7; ++a)
                    if (shared & (1 << a)) ge -= kMetricExp[a];
                C v = c1 * c2 * m.w_pow(ge);
                // 1/2 from the symmetrization; the two halves coincide on
                // the diagonal but this loop visits them once
                CoeffOps<C>::scale(v, sgn * fact, i == j ? 1 : 2);
                out.accum(i, j, v);
            }
        }
    }
    return out;
}

// norm-squared pairing on symmetric 2-tensors with the half convention:
// g(h,k) = (1/2) h_{ij} k_{lm} g^{il} g^{jm}
template <class C>
C sym2_inner(const Sym2T<C>& h, const Sym2T<C>& k, const DiagMetric<C>& m, C zero) {
    C out = std::move(zero);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            if (CoeffOps<C>::is_zero(h(i, j)) || CoeffOps<C>::is_zero(k(i, j))) continue;
            out += h(i, j) * k(i, j) * m.w_pow(-kMetricExp[i] - kMetricExp[j]);
        }
    CoeffOps<C>::scale(out, 1, 2);
    return out;
}

}  // namespace g2flow
