#include "g2flow/spectral.hpp"

#include <cmath>
#include <numbers>

#include "g2flow/operators.hpp"

namespace g2flow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> to_complex(const Profile& p) {
    std::vector<std::complex<double>> a(p.n());
    for (std::uint32_t k = 0; k < p.n(); ++k) a[k] = p[k];
    return a;
}

Profile from_complex(const Grid& g, const std::vector<std::complex<double>>& a) {
    std::vector<double> v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k].real();
    return Profile(g, std::move(v));
}

// signed mode number for bin k of an n-point transform
int mode_of(std::uint32_t k, std::uint32_t n) {
    return (k <= n / 2) ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}
}  // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 1.0 : -1.0) * kTwoPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

Profile derivative(const Profile& p) {
    auto a = to_complex(p);
    fft_pow2(a, false);
    const std::uint32_t n = p.n();
    for (std::uint32_t k = 0; k < n; ++k) {
        if (k == n / 2) {
            a[k] = 0.0;  // Nyquist mode has no well-defined odd derivative
            continue;
        }
        a[k] *= std::complex<double>(0.0, kTwoPi * mode_of(k, n));
    }
    fft_pow2(a, true);
    return from_complex(p.grid(), a);
}

Profile antiderivative_L(const Profile& f, double tol) {
    const double m = integrate(f);
    if (std::abs(m) >= tol)
        throw std::invalid_argument("antiderivative_L: input mean " + std::to_string(m) +
                                    " is not zero; antiderivative is not periodic");
    auto a = to_complex(f);
    fft_pow2(a, false);
    const std::uint32_t n = f.n();
    for (std::uint32_t k = 0; k < n; ++k) {
        const int mk = mode_of(k, n);
        if (mk == 0 || k == n / 2) {
            a[k] = 0.0;
            continue;
        }
        a[k] /= std::complex<double>(0.0, kTwoPi * mk);
    }
    fft_pow2(a, true);
    return from_complex(f.grid(), a);
}

double fourier_eval(const Profile& p, double x) {
    std::vector<double> xs{x};
    return fourier_eval(p, xs)[0];
}

std::vector<double> fourier_eval(const Profile& p, const std::vector<double>& xs) {
    auto a = to_complex(p);
    fft_pow2(a, false);
    const std::uint32_t n = p.n();
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // real signal: sum over k = 0..n/2 with conjugate symmetry,
        // phases by complex recurrence (one trig pair per point)
        const std::complex<double> z(std::cos(kTwoPi * xs[i]), std::sin(kTwoPi * xs[i]));
        std::complex<double> zk = z;
        double acc = a[0].real() / n;
        for (std::uint32_t k = 1; k < n / 2; ++k) {
            acc += 2.0 / n * (a[k].real() * zk.real() - a[k].imag() * zk.imag());
            zk *= z;
        }
        acc += a[n / 2].real() / n * zk.real();
        out[i] = acc;
    }
    return out;
}

Profile fourier_shift(const Profile& p, double shift) {
    auto a = to_complex(p);
    fft_pow2(a, false);
    const std::uint32_t n = p.n();
    for (std::uint32_t k = 0; k < n; ++k) {
        if (k == n / 2) {
            // keep the Nyquist bin real under shift
            a[k] *= std::cos(kTwoPi * mode_of(k, n) * shift);
            continue;
        }
        const double ang = kTwoPi * mode_of(k, n) * shift;
        a[k] *= std::complex<double>(std::cos(ang), std::sin(ang));
    }
    fft_pow2(a, true);
    return from_complex(p.grid(), a);
}

Profile heat_exact(const Profile& u0, double t) {
    auto a = to_complex(u0);
    fft_pow2(a, false);
    const std::uint32_t n = u0.n();
    for (std::uint32_t k = 0; k < n; ++k) {
        const double mk = mode_of(k, n);
        a[k] *= std::exp(-kTwoPi * kTwoPi * mk * mk * t);
    }
    fft_pow2(a, true);
    return from_complex(u0.grid(), a);
}

CorrelationPeak best_cyclic_shift(const Profile& a, const Profile& b) {
    require_same_grid(a, b);
    const std::uint32_t n = a.n();
    // correlation c(s) = \int a(x+s) b(x) dx via FFT
    auto fa = to_complex(a);
    auto fb = to_complex(b);
    fft_pow2(fa, false);
    fft_pow2(fb, false);
    std::vector<std::complex<double>> fc(n);
    for (std::uint32_t k = 0; k < n; ++k) fc[k] = fa[k] * std::conj(fb[k]);
    fft_pow2(fc, true);
    // fc[j] = sum_k a[k+j] b[k]  (up to 1/n factor handled below)
    std::uint32_t best = 0;
    for (std::uint32_t j = 1; j < n; ++j)
        if (fc[j].real() > fc[best].real()) best = j;
    // refine the peak: c(s) = sum_k Re[fa_k conj(fb_k) e^{2 pi i k s}] / n,
    // Newton iterations on c'(s) = 0 from the discrete argmax
    double s = static_cast<double>(best) / n;
    for (int it = 0; it < 8; ++it) {
        double c1 = 0.0, c2 = 0.0;
        for (std::uint32_t k = 1; k < n; ++k) {
            if (k == n / 2) continue;
            const double mk = mode_of(k, n);
            const double w = kTwoPi * mk;
            const std::complex<double> ph(std::cos(w * s), std::sin(w * s));
            const std::complex<double> base = fa[k] * std::conj(fb[k]) * ph;
            c1 += (std::complex<double>(0.0, w) * base).real();
            c2 += (-w * w * base).real();
        }
        if (std::abs(c2) < 1e-300) break;
        const double step = c1 / c2;
        s -= step;
        if (std::abs(step) < 1e-16) break;
    }
    s -= std::floor(s);
    // score: || a(.+s) - b ||_sup relative to sup|b|
    const Profile shifted = fourier_shift(a, s);
    double err = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) err = std::max(err, std::abs(shifted[k] - b[k]));
    const double scale = std::max(1e-300, b.sup_norm());
    return CorrelationPeak{s, 1.0 - err / scale};
}

Profile canonical_Q(const TangentProfile& f, const PositiveProfile& u) {
    require_same_grid(f.base(), u.base());
    Profile F = antiderivative_L(f.base());
    const Profile uinv = 1.0 / u.base();
    const double c1 = -integrate(F * uinv) / integrate(uinv);
    for (std::uint32_t k = 0; k < F.n(); ++k) F[k] += c1;
    return F;
}

Profile canonical_Q_u(const TangentProfile& f, const PositiveProfile& u) {
    return canonical_Q(f, u) / u.base();
}

Profile transport_K(const TangentProfile& f, const PositiveProfile& u) {
    const Profile Q = canonical_Q(f, u);
    return f.base() - Q * derivative(u.base()) / u.base();
}

}  // namespace g2flow
