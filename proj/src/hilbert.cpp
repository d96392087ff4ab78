#include "qent/hilbert.hpp"

#include "qent/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qent {

using std::numbers::pi;

GridSpec::GridSpec(int n_sites) : n_(n_sites), h_eff_(1.0 / (2.0 * pi * n_sites))
{
    if (n_sites < 4 || n_sites > 4096 || n_sites % 2 != 0) {
        throw std::invalid_argument("n_sites must be even and in [4, 4096], got " + std::to_string(n_sites));
    }
}

std::vector<double> GridSpec::positions() const
{
    std::vector<double> q(n_);
    for (int k = 0; k < n_; ++k) q[k] = position(k);
    return q;
}

std::vector<double> GridSpec::momenta() const
{
    std::vector<double> p(n_);
    for (int i = 0; i < n_; ++i) p[i] = momentum(i - n_ / 2);
    return p;
}

GridSpec make_grid(int n_sites) { return GridSpec(n_sites); }

void WavepacketSpec::validate(const GridSpec& grid) const
{
    if (!(center_q >= 0.0 && center_q < 1.0)) throw std::invalid_argument("center_q must lie in [0, 1)");
    if (!(center_p >= -0.5 && center_p < 0.5)) throw std::invalid_argument("center_p must lie in [-1/2, 1/2)");
    const double lo = 1.0 / grid.n_sites();
    if (!(width_sigma >= lo && width_sigma <= 0.1)) {
        throw std::invalid_argument("width_sigma must lie in [1/N, 0.1], got " + std::to_string(width_sigma));
    }
}

double coherent_width(const GridSpec& grid) { return std::sqrt(grid.h_eff()); }

QuantumState::QuantumState(GridSpec grid, int particles, std::vector<cplx> amplitudes)
    : grid_(grid), particles_(particles), amp_(std::move(amplitudes))
{
    if (particles != 1 && particles != 2) throw std::invalid_argument("particles must be 1 or 2");
    const std::size_t n = static_cast<std::size_t>(grid.n_sites());
    const std::size_t expected = particles == 1 ? n : n * n;
    if (amp_.size() != expected) throw std::invalid_argument("amplitude vector has wrong length");
}

QuantumState QuantumState::basis(GridSpec grid, int site)
{
    if (site < 0 || site >= grid.n_sites()) throw std::invalid_argument("basis site out of range");
    std::vector<cplx> v(grid.n_sites());
    v[site] = 1.0;
    return QuantumState(grid, 1, std::move(v));
}

double QuantumState::norm() const
{
    double s = 0.0;
    for (const auto& z : amp_) s += std::norm(z);
    return std::sqrt(s);
}

void QuantumState::normalize()
{
    const double n = norm();
    if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero state");
    for (auto& z : amp_) z /= n;
}

QuantumState make_wavepacket(const WavepacketSpec& spec, const GridSpec& grid)
{
    spec.validate(grid);
    const int n = grid.n_sites();
    const double h = grid.h_eff();
    const double two_s2 = 2.0 * spec.width_sigma * spec.width_sigma;
    std::vector<cplx> amp(n);
    for (int k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (int w = -1; w <= 1; ++w) {
            const double dq = grid.position(k) - spec.center_q - w;
            acc += std::polar(std::exp(-dq * dq / two_s2), spec.center_p * dq / h);
        }
        amp[k] = acc;
    }
    QuantumState st(grid, 1, std::move(amp));
    st.normalize();
    return st;
}

QuantumState tensor_product(const QuantumState& a, const QuantumState& b)
{
    if (a.particles() != 1 || b.particles() != 1) throw std::invalid_argument("tensor_product needs one-particle states");
    if (!(a.grid() == b.grid())) throw std::invalid_argument("tensor_product: grids differ");
    const int n = a.n_sites();
    std::vector<cplx> amp(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int r = 0; r < n; ++r) amp[static_cast<std::size_t>(x) * n + r] = a[x] * b[r];
    return QuantumState(a.grid(), 2, std::move(amp));
}

double inner_product_abs(const QuantumState& a, const QuantumState& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("inner_product: size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

double expectation_position_circular(const QuantumState& st)
{
    if (st.particles() != 1) throw std::invalid_argument("expects a one-particle state");
    cplx m = 0.0;
    for (int k = 0; k < st.n_sites(); ++k) m += std::norm(st[k]) * std::polar(1.0, 2.0 * pi * st.grid().position(k));
    double q = std::arg(m) / (2.0 * pi);
    if (q < 0.0) q += 1.0;
    return q;
}

std::vector<cplx> to_momentum(const QuantumState& st)
{
    if (st.particles() != 1) throw std::invalid_argument("expects a one-particle state");
    const int n = st.n_sites();
    std::vector<cplx> buf(st.amplitudes().begin(), st.amplitudes().end());
    UnitaryDft(n, 1).forward(buf);
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        const int m = j < n / 2 ? j : j - n;
        out[m + n / 2] = buf[j];
    }
    return out;
}

}  // namespace qent
