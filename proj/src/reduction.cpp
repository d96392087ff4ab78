#include "qent/reduction.hpp"

#include "qent/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>

namespace qent {

namespace {

using ConstAmplitudeMap = Eigen::Map<const ComplexMatrix>;

ConstAmplitudeMap amplitude_matrix(const QuantumState& st)
{
    if (st.particles() != 2) throw std::invalid_argument("expects a two-particle state");
    const int n = st.n_sites();
    return ConstAmplitudeMap(st.amplitudes().data(), n, n);
}

}  // namespace

DensityMatrix::DensityMatrix(GridSpec grid, ComplexMatrix entries) : grid_(grid), rho_(std::move(entries))
{
    if (rho_.rows() != grid_.n_sites() || rho_.cols() != grid_.n_sites()) {
        throw std::invalid_argument("density matrix shape does not match grid");
    }
}

double DensityMatrix::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(rho_), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix partial_trace(const QuantumState& state)
{
    require_unit_norm("partial_trace", state.norm());
    const auto a = amplitude_matrix(state);
    ComplexMatrix rho = a * a.adjoint();
    return DensityMatrix(state.grid(), std::move(rho));
}

DensityMatrix partial_trace_first(const QuantumState& state)
{
    require_unit_norm("partial_trace_first", state.norm());
    const auto a = amplitude_matrix(state);
    // rho_2[r, s] = sum_x psi[x, r] conj(psi[x, s])
    ComplexMatrix rho = a.transpose() * a.conjugate();
    return DensityMatrix(state.grid(), std::move(rho));
}

DensityMatrix from_pure(const QuantumState& st)
{
    if (st.particles() != 1) throw std::invalid_argument("from_pure expects a one-particle state");
    const int n = st.n_sites();
    Eigen::Map<const Eigen::VectorXcd> v(st.amplitudes().data(), n);
    ComplexMatrix rho = v * v.adjoint();
    return DensityMatrix(st.grid(), std::move(rho));
}

double purity(const DensityMatrix& rho) { return rho.entries().squaredNorm(); }

double purity_direct(const QuantumState& state)
{
    require_unit_norm("purity_direct", state.norm());
    const auto a = amplitude_matrix(state);
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a.adjoint());
    double diag = 0.0;
    double off = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        diag += std::norm(gram(c, c));
        for (Eigen::Index r = c + 1; r < n; ++r) off += std::norm(gram(r, c));
    }
    return diag + 2.0 * off;
}

double purity_svd(const QuantumState& state)
{
    require_unit_norm("purity_svd", state.norm());
    Eigen::MatrixXcd a = amplitude_matrix(state);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues().array().pow(4).sum();
}

std::vector<double> offdiag_profile(const DensityMatrix& rho)
{
    const int n = rho.grid().n_sites();
    std::vector<double> prof(n, 0.0);
    for (int s = 0; s < n; ++s) {
        double acc = 0.0;
        for (int x = 0; x < n; ++x) acc += std::norm(rho(x, (x + s) % n));
        prof[s] = acc / n;
    }
    return prof;
}

}  // namespace qent
