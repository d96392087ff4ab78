#pragma once

// Discrete one- and two-particle Hilbert spaces on the unit torus.
//
// An N-site torus carries positions q_k = k/N and momenta p_m = m/N with
// m in [-N/2, N/2). The effective Planck constant is fixed by the lattice,
// h_eff = 1/(2 pi N), so that position and momentum bases are related by the
// unitary DFT and the classical limit is N -> infinity.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qent {

using cplx = std::complex<double>;

class GridSpec {
public:
    // Throws std::invalid_argument unless n_sites is even and in [4, 4096].
    explicit GridSpec(int n_sites);

    int n_sites() const { return n_; }
    double h_eff() const { return h_eff_; }

    double position(int k) const { return static_cast<double>(k) / n_; }
    // Momentum of lattice index m in [-N/2, N/2).
    double momentum(int m) const { return static_cast<double>(m) / n_; }
    // Momentum attached to FFT output slot j in [0, N).
    double momentum_of_slot(int j) const { return momentum(j < n_ / 2 ? j : j - n_); }

    std::vector<double> positions() const;
    std::vector<double> momenta() const;  // ascending, from -1/2

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    int n_;
    double h_eff_;
};

GridSpec make_grid(int n_sites);

struct WavepacketSpec {
    double center_q = 0.5;    // [0, 1)
    double center_p = 0.0;    // [-1/2, 1/2)
    double width_sigma = 0.05;

    // Throws std::invalid_argument when the centre is outside the
    // fundamental domain or sigma is outside [1/N, 0.1].
    void validate(const GridSpec& grid) const;
};

// Width of a minimal-uncertainty packet (equal position and momentum spread).
double coherent_width(const GridSpec& grid);

class QuantumState {
public:
    QuantumState(GridSpec grid, int particles, std::vector<cplx> amplitudes);

    static QuantumState basis(GridSpec grid, int site);

    const GridSpec& grid() const { return grid_; }
    int particles() const { return particles_; }
    std::size_t size() const { return amp_.size(); }
    int n_sites() const { return grid_.n_sites(); }

    std::span<const cplx> amplitudes() const { return amp_; }
    std::span<cplx> amplitudes() { return amp_; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }
    cplx& operator[](std::size_t i) { return amp_[i]; }

    // Two-particle amplitude <x, r|psi>.
    const cplx& at(int x, int r) const { return amp_[static_cast<std::size_t>(x) * grid_.n_sites() + r]; }

    double norm() const;
    void normalize();

private:
    GridSpec grid_;
    int particles_;
    std::vector<cplx> amp_;
};

QuantumState make_wavepacket(const WavepacketSpec& spec, const GridSpec& grid);

// amplitudes[x*N + r] = a[x] * b[r]
QuantumState tensor_product(const QuantumState& a, const QuantumState& b);

double inner_product_abs(const QuantumState& a, const QuantumState& b);
double expectation_position_circular(const QuantumState& one_particle);

// Unitary DFT of a one-particle state into the momentum lattice, returned in
// ascending momentum order (index 0 <-> p = -1/2).
std::vector<cplx> to_momentum(const QuantumState& one_particle);

}  // namespace qent
