#pragma once

// Experiment configuration: one JSON object per file, unknown keys rejected.
//
// {
//   "N": 128, "K": 10.0, "eps": 0.0005, "zeta": 0.1, "sigma": null,
//   "n_steps": 300, "centers": "random" | [[q1, p1, q2, p2], ...],
//   "ensemble_size": 32, "seed": 1, "outputs": "runs/example",
//   "classical": {"n_traj": 200, "n_max_lag": 10, "lyapunov_steps": 2000,
//                 "lyapunov_traj": 20, "correlator_steps": 2000},
//   "analysis": {"window_lo": null, "window_hi": null},
//   "profile_steps": [0, 1, 2, 5]
// }
//
// sigma null means the minimal-uncertainty width sqrt(h_eff).

#include "qent/hilbert.hpp"
#include "qent/qdynamics.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qent {

struct ClassicalSettings {
    int n_traj = 200;
    int n_max_lag = 10;
    int lyapunov_steps = 2000;
    int lyapunov_traj = 20;
    int correlator_steps = 2000;
};

struct ExperimentConfig {
    int n_sites = 128;
    double kick_K = 10.0;
    double eps = 0.0;
    double zeta = 0.1;
    std::optional<double> sigma;
    int n_steps = 100;
    // Empty means uniformly random centres, one draw per member.
    std::vector<std::array<double, 4>> centers;
    int ensemble_size = 32;
    std::uint64_t seed = 1;
    std::string outputs = "qent_out";
    ClassicalSettings classical;
    std::optional<int> window_lo;
    std::optional<int> window_hi;
    std::vector<int> profile_steps;  // empty: default snapshot set

    // Throws ConfigError naming the offending field. Returns warnings.
    std::vector<std::string> validate() const;

    ModelParams model_params() const;
    double packet_width() const;
    int members() const { return centers.empty() ? ensemble_size : static_cast<int>(centers.size()); }
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& c);

// Applies one sweep value to a copy of the config. Parameter must be one of
// eps, K, N, zeta.
ExperimentConfig with_parameter(const ExperimentConfig& base, const std::string& param, double value);

}  // namespace qent
