#include "qent/qdynamics.hpp"

#include "qent/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qent {

using std::numbers::pi;

void require_unit_norm(const char* where, double norm, double tol)
{
    if (!(std::abs(norm - 1.0) <= tol)) throw NormError(where, norm);
}

std::vector<std::string> ModelParams::validate() const
{
    const int n = grid.n_sites();
    if (!(kick_K >= 0.0)) throw std::invalid_argument("kick_K must be non-negative");
    if (!(coupling_eps >= 0.0)) throw std::invalid_argument("coupling_eps must be non-negative");
    if (!(range_zeta >= 2.0 / n && range_zeta <= 0.5)) {
        throw std::invalid_argument("range_zeta must lie in [2/N, 0.5], got " + std::to_string(range_zeta));
    }
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    std::vector<std::string> warnings;
    if (coupling_eps > kick_K) {
        warnings.push_back("coupling_eps > kick_K: outside the weak-coupling regime");
    }
    return warnings;
}

InteractionTable build_interaction(const ModelParams& params)
{
    params.validate();
    const int n = params.grid.n_sites();
    const double two_z2 = 2.0 * params.range_zeta * params.range_zeta;
    std::vector<double> g(n);
    double mean = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = std::min(static_cast<double>(j) / n, 1.0 - static_cast<double>(j) / n);
        g[j] = std::exp(-d * d / two_z2);
        mean += g[j];
    }
    mean /= n;
    InteractionTable t;
    t.values.resize(n);
    for (int j = 0; j < n; ++j) t.values[j] = params.coupling_eps * (g[j] - mean);
    return t;
}

double kick_potential(double kick_K, double q) { return kick_K / (4.0 * pi * pi) * std::cos(2.0 * pi * q); }

FloquetPropagator::FloquetPropagator(const ModelParams& params)
    : params_(params), table_(build_interaction(params)), dft1_(params.grid.n_sites(), 1),
      dft2_(params.grid.n_sites(), 2)
{
    const GridSpec& g = params_.grid;
    const int n = g.n_sites();
    const double h = g.h_eff();
    kick1_.resize(n);
    free1_.resize(n);
    coupling_phase_.resize(n);
    for (int k = 0; k < n; ++k) kick1_[k] = std::polar(1.0, -kick_potential(params_.kick_K, g.position(k)) / h);
    for (int j = 0; j < n; ++j) {
        const double p = g.momentum_of_slot(j);
        free1_[j] = std::polar(1.0, -p * p / (2.0 * h));
    }
    for (int j = 0; j < n; ++j) coupling_phase_[j] = std::polar(1.0, -table_.values[j] / h);
}

void FloquetPropagator::apply_interaction_phase(QuantumState& state) const
{
    if (state.particles() != 2) throw std::invalid_argument("interaction phase needs a two-particle state");
    const int n = state.n_sites();
    auto a = state.amplitudes();
    for (int x = 0; x < n; ++x) {
        cplx* row = a.data() + static_cast<std::size_t>(x) * n;
        // (x - r) mod N runs x, x-1, ..., 0, N-1, ..., x+1
        for (int r = 0; r <= x; ++r) row[r] *= coupling_phase_[x - r];
        for (int r = x + 1; r < n; ++r) row[r] *= coupling_phase_[x - r + n];
    }
}

void FloquetPropagator::step(QuantumState& state) const
{
    if (!(state.grid() == params_.grid)) throw std::invalid_argument("floquet step: grid mismatch");
    require_unit_norm("floquet_step", state.norm());
    const int n = state.n_sites();
    auto a = state.amplitudes();
    if (state.particles() == 1) {
        for (int k = 0; k < n; ++k) a[k] *= kick1_[k];
        dft1_.forward(a);
        for (int j = 0; j < n; ++j) a[j] *= free1_[j];
        dft1_.backward(a);
        return;
    }
    for (int x = 0; x < n; ++x) {
        cplx* row = a.data() + static_cast<std::size_t>(x) * n;
        const cplx kx = kick1_[x];
        for (int r = 0; r <= x; ++r) row[r] *= kx * kick1_[r] * coupling_phase_[x - r];
        for (int r = x + 1; r < n; ++r) row[r] *= kx * kick1_[r] * coupling_phase_[x - r + n];
    }
    dft2_.forward(a);
    for (int j1 = 0; j1 < n; ++j1) {
        cplx* row = a.data() + static_cast<std::size_t>(j1) * n;
        const cplx f1 = free1_[j1];
        for (int j2 = 0; j2 < n; ++j2) row[j2] *= f1 * free1_[j2];
    }
    dft2_.backward(a);
}

QuantumState floquet_step(const QuantumState& state, const ModelParams& params)
{
    QuantumState out = state;
    FloquetPropagator(params).step(out);
    return out;
}

QuantumState evolve(const QuantumState& initial, const ModelParams& params, const StepObserver& observer)
{
    if (params.n_steps < 1) throw std::invalid_argument("evolve: n_steps must be >= 1");
    const FloquetPropagator prop(params);
    QuantumState st = initial;
    for (int t = 1; t <= params.n_steps; ++t) {
        prop.step(st);
        if (observer) observer(t, st);
    }
    return st;
}

}  // namespace qent
