#include "qent/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qent {

namespace {
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
}  // namespace

struct UnitaryDft::Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::size_t len = 0;
    double scale = 1.0;

    ~Plans()
    {
        std::lock_guard lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

UnitaryDft::UnitaryDft(int n, int rank) : n_(n), rank_(rank), plans_(std::make_unique<Plans>())
{
    if (n <= 0 || (rank != 1 && rank != 2)) throw std::invalid_argument("UnitaryDft: bad shape");
    plans_->len = rank == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
    plans_->scale = 1.0 / std::sqrt(static_cast<double>(plans_->len));

    // Callers hand in plain std::vector storage; plans must not assume SIMD alignment.
    std::vector<std::complex<double>> scratch(plans_->len);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    std::lock_guard lock(planner_mutex());
    if (rank == 1) {
        plans_->fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
        plans_->bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
    } else {
        plans_->fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
        plans_->bwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
    }
    if (!plans_->fwd || !plans_->bwd) throw std::runtime_error("UnitaryDft: FFTW planning failed");
}

UnitaryDft::~UnitaryDft() = default;
UnitaryDft::UnitaryDft(UnitaryDft&&) noexcept = default;
UnitaryDft& UnitaryDft::operator=(UnitaryDft&&) noexcept = default;

static void run(fftw_plan plan, double scale, std::size_t len, std::span<std::complex<double>> data)
{
    if (data.size() != len) throw std::invalid_argument("UnitaryDft: length mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
    for (auto& z : data) z *= scale;
}

void UnitaryDft::forward(std::span<std::complex<double>> data) const
{
    run(plans_->fwd, plans_->scale, plans_->len, data);
}

void UnitaryDft::backward(std::span<std::complex<double>> data) const
{
    run(plans_->bwd, plans_->scale, plans_->len, data);
}

}  // namespace qent
