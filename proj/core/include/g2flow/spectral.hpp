#pragma once

#include <complex>
#include <vector>

#include "g2flow/profile.hpp"

namespace g2flow {

// In-place radix-2 complex FFT (power-of-two length only).
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

// Spectral derivative: Fourier multiplier 2*pi*i*k, zero mode -> 0.
Profile derivative(const Profile& p);

// Zero-mean spectral antiderivative (inverse of `derivative` on zero-mean
// input). Throws if the input mean exceeds `tol` — the antiderivative of a
// non-zero-mean function is not periodic.
Profile antiderivative_L(const Profile& f, double tol = 1e-10);

// Trigonometric interpolation of p at arbitrary points (periodic).
double fourier_eval(const Profile& p, double x);
std::vector<double> fourier_eval(const Profile& p, const std::vector<double>& xs);

// p(x + shift) resampled on the same grid via the shift theorem.
Profile fourier_shift(const Profile& p, double shift);

// Heat semigroup: multiply mode k by exp(-4 pi^2 k^2 t).
Profile heat_exact(const Profile& u0, double t);

// Cyclic cross-correlation peak: best s in [0,1) maximizing
// \int a(x+s) b(x) dx, refined by quadratic interpolation of the
// correlation sequence. Returns (s, peak / autocorrelation scale).
struct CorrelationPeak {
    double shift;
    double score;  // 1.0 means perfect match of a(shifted) with b
};
CorrelationPeak best_cyclic_shift(const Profile& a, const Profile& b);

}  // namespace g2flow
