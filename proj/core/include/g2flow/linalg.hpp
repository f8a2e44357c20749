#pragma once

#include <cstddef>
#include <vector>

namespace g2flow {

// Small dense symmetric matrix with a cyclic Jacobi eigensolver; plenty for
// the 12x12 certificate work.
class SymMatrix {
  public:
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }
    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
        return t;
    }

  private:
    std::size_t n_;
    std::vector<double> a_;
};

struct EigenDecomposition {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // vectors[k] matches values[k]
    double max_offdiagonal;                   // residual of the rotation sweep
};

// Cyclic Jacobi rotations until off-diagonal norm underflows.
EigenDecomposition jacobi_eigen(const SymMatrix& a, int max_sweeps = 64);

// residual ||A v - lambda v||_2
double eigen_residual(const SymMatrix& a, const std::vector<double>& v, double lambda);

}  // namespace g2flow
