#pragma once

// Floquet evolution of two kicked rotors on the quantized torus, coupled by a
// short-ranged interaction that depends only on the periodic distance between
// the particles.
//
// One period: kick exp[-i (V(q1) + V(q2) + U(q1 - q2)) / h_eff] with
// V(q) = K/(4 pi^2) cos(2 pi q), followed by free flight
// exp[-i (p1^2 + p2^2) / (2 h_eff)]. The classical limit is a pair of standard
// maps p' = p + (K/2pi) sin(2 pi q), q' = q + p' coupled through -dU/dq.

#include "qent/fft.hpp"
#include "qent/hilbert.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qent {

struct ModelParams {
    GridSpec grid{128};
    double kick_K = 10.0;
    double coupling_eps = 0.0;
    double range_zeta = 0.1;
    int n_steps = 100;

    // Throws std::invalid_argument on a bound violation. Returns advisory
    // warnings (currently only the weak-coupling gate eps > K).
    std::vector<std::string> validate() const;
};

// Mean-subtracted periodized Gaussian, values[j] = eps (G(d_j) - mean G),
// d_j = min(j/N, 1 - j/N), G(d) = exp(-d^2 / (2 zeta^2)).
struct InteractionTable {
    std::vector<double> values;
    bool mean_removed = true;

    double operator()(int x, int r) const
    {
        const int n = static_cast<int>(values.size());
        return values[static_cast<std::size_t>(((x - r) % n + n) % n)];
    }
};

InteractionTable build_interaction(const ModelParams& params);

// Kick potential V(q) = K/(4 pi^2) cos(2 pi q).
double kick_potential(double kick_K, double q);

// Precomputed phases and FFT plans for repeated steps. Immutable after
// construction, so one instance per worker thread is enough.
class FloquetPropagator {
public:
    explicit FloquetPropagator(const ModelParams& params);

    // Advances a one- or two-particle state by one period in place. A
    // one-particle state sees only the kick potential and free flight.
    // Throws NormError when the input norm deviates from 1 by more than 1e-6.
    void step(QuantumState& state) const;

    // Interaction phase only, exp[-i U(q1 - q2) / h_eff], applied once.
    void apply_interaction_phase(QuantumState& state) const;

    const ModelParams& params() const { return params_; }

private:
    ModelParams params_;
    InteractionTable table_;
    std::vector<cplx> kick1_;  // one-particle kick phase on the position grid
    std::vector<cplx> free1_;  // one-particle free phase in FFT slot order
    std::vector<cplx> coupling_phase_;  // exp(-i U_j / h_eff) indexed by (x - r) mod N
    UnitaryDft dft1_;
    UnitaryDft dft2_;
};

QuantumState floquet_step(const QuantumState& state, const ModelParams& params);

using StepObserver = std::function<void(int step, const QuantumState& state)>;

// Applies params.n_steps periods, calling observer(t, state) after each (t = 1..n_steps).
QuantumState evolve(const QuantumState& initial, const ModelParams& params, const StepObserver& observer = {});

}  // namespace qent
