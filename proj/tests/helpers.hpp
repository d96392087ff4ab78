#pragma once

#include "qent/hilbert.hpp"
#include "qent/rng.hpp"

#include <cmath>

namespace qent::test {

// Complex Gaussian amplitudes, normalized; 1 or 2 particles.
inline QuantumState random_state(const GridSpec& grid, int particles, Rng& rng)
{
    const std::size_t n = static_cast<std::size_t>(grid.n_sites());
    std::vector<cplx> v(particles == 1 ? n : n * n);
    for (auto& z : v) z = {rng.normal(), rng.normal()};
    QuantumState s(grid, particles, std::move(v));
    s.normalize();
    return s;
}

inline double max_abs_diff(const QuantumState& a, const QuantumState& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace qent::test
