#pragma once

// Unitary in-place DFT over one or two torus coordinates, backed by FFTW.
//
// Plans are created with FFTW_ESTIMATE so the chosen algorithm (and therefore
// every rounding) is identical between runs. Plan creation is serialized
// through a process-wide mutex; execution is thread-safe.

#include <complex>
#include <memory>
#include <span>

namespace qent {

class UnitaryDft {
public:
    // rank 1: length n; rank 2: n x n row-major.
    UnitaryDft(int n, int rank);
    ~UnitaryDft();
    UnitaryDft(const UnitaryDft&) = delete;
    UnitaryDft& operator=(const UnitaryDft&) = delete;
    UnitaryDft(UnitaryDft&&) noexcept;
    UnitaryDft& operator=(UnitaryDft&&) noexcept;

    // psi(p_m) = n^{-rank/2} sum_k exp(-2 pi i k m / n) psi(q_k), FFT slot order.
    void forward(std::span<std::complex<double>> data) const;
    void backward(std::span<std::complex<double>> data) const;

    int n() const { return n_; }
    int rank() const { return rank_; }

private:
    struct Plans;
    int n_;
    int rank_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace qent
