#pragma once

// Reduced one-particle density matrix and purity measures.

#include "qent/hilbert.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qent {

using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DensityMatrix {
public:
    DensityMatrix(GridSpec grid, ComplexMatrix entries);

    const GridSpec& grid() const { return grid_; }
    const ComplexMatrix& entries() const { return rho_; }
    const cplx& operator()(int x, int y) const { return rho_(x, y); }

    double trace_real() const { return rho_.trace().real(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

private:
    GridSpec grid_;
    ComplexMatrix rho_;
};

// rho_1[x, y] = sum_r psi[x N + r] conj(psi[y N + r]) (traces out particle 2).
DensityMatrix partial_trace(const QuantumState& state);
// Traces out particle 1 instead.
DensityMatrix partial_trace_first(const QuantumState& state);

DensityMatrix from_pure(const QuantumState& one_particle);

// Tr rho^2 = sum_{x,y} |rho[x,y]|^2
double purity(const DensityMatrix& rho);

// Tr rho_1^2 from the amplitude matrix A (A[x][r] = psi[x N + r]) through the
// Gram matrix A^H A, whose squared Frobenius norm is the sum of the fourth
// powers of the singular values of A. rho_1 itself is never formed.
double purity_direct(const QuantumState& state);

// Same quantity from an explicit SVD; slow, kept as a cross-check.
double purity_svd(const QuantumState& state);

inline double linear_entropy(double purity_value) { return 1.0 - purity_value; }

// profile[s] = (1/N) sum_x |rho[x, (x + s) mod N]|^2
std::vector<double> offdiag_profile(const DensityMatrix& rho);

}  // namespace qent
