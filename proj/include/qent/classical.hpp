#pragma once

// Classical limit of the coupled kicked rotors: two standard maps on the unit
// torus coupled through the same interaction the quantum kick uses.
//
//   p1' = p1 + (K/2pi) sin(2 pi q1) - eps dG/dq1 (q1 - q2)
//   p2' = p2 + (K/2pi) sin(2 pi q2) + eps dG/dq1 (q1 - q2)
//   q'  = q + p'                       (q mod 1, p wrapped to [-1/2, 1/2))
//
// plus estimators for the Lyapunov exponents and for the time-integrated
// interaction correlators that set the golden-rule entanglement rate.

#include "qent/qdynamics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace qent {

struct PhasePoint {
    double q1 = 0.0;
    double p1 = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;
    // Monodromy accumulator in (q1, p1, q2, p2) order.
    Eigen::Matrix4d tangent = Eigen::Matrix4d::Identity();
};

double wrap_position(double q);
double wrap_momentum(double p);

// Periodized Gaussian of the wrapped difference and its first two derivatives
// with respect to the difference (unit strength, mean not removed).
struct GaussianInteraction {
    double zeta;
    double value(double delta) const;
    double gradient(double delta) const;
    double curvature(double delta) const;
};

// One period of the coupled map; the tangent is multiplied by the exact
// Jacobian of the step.
PhasePoint classical_step(const PhasePoint& pt, const ModelParams& params);

// Jacobian of one step evaluated at pt (before the step).
Eigen::Matrix4d step_jacobian(const PhasePoint& pt, const ModelParams& params);

struct LyapunovEstimate {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double stderr = 0.0;   // of lambda1
    double stderr2 = 0.0;  // of lambda2
    // Only at eps = 0: separate one-particle exponents of each particle.
    double lambda_particle1 = 0.0;
    double lambda_particle2 = 0.0;
    bool converged = true;  // false when stderr / lambda1 > 0.2
    int n_traj = 0;
    int n_steps = 0;
    std::uint64_t seed = 0;
};

// Two largest exponents from tangent-space evolution with Gram-Schmidt
// re-orthonormalization every step, averaged over uniformly sampled initial
// conditions. Requires n_steps >= 1000 and n_traj >= 10.
LyapunovEstimate lyapunov(const ModelParams& params, int n_traj, int n_steps, std::uint64_t seed);

struct CorrelatorEstimate {
    double gamma_big = 0.0;    // or gamma_small, depending on the observable
    double stderr = 0.0;
    std::vector<double> correlation_curve;  // C(n), n = 0..n_max
    std::vector<double> curve_stderr;
    int n_traj = 0;
    int n_steps = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;

    double value() const { return gamma_big; }
};

enum class CorrelatorObservable {
    interaction,         // U(q_s - q_s')
    gradient_first,      // dU/dq_s
    gradient_second,     // dU/dq_s', equal to -gradient_first
};

struct CorrelatorOptions {
    int n_traj = 200;
    int n_steps = 4000;
    int n_max_lag = 10;
    std::uint64_t seed = 1;
    bool swap_roles = false;  // exchange the two trajectories of each pair
    int workers = 1;
};

// Sampled along uncoupled trajectory pairs (eps enters the observable only):
// C(n) = <dO(0) dO(n)>, result = C(0) + 2 sum_{n=1}^{n_max} C(n).
CorrelatorEstimate interaction_correlator(const ModelParams& params, CorrelatorObservable obs,
                                          const CorrelatorOptions& opt);

CorrelatorEstimate correlator_gamma_big(const ModelParams& params, int n_traj, int n_steps, int n_max_lag,
                                        std::uint64_t seed);
CorrelatorEstimate correlator_gamma_small(const ModelParams& params, int n_traj, int n_steps, int n_max_lag,
                                          std::uint64_t seed);

// ln(zeta / sigma) / lambda1; throws std::domain_error if zeta <= sigma or lambda1 <= 0.
double ehrenfest_time(double lambda1, double zeta, double sigma);

}  // namespace qent
