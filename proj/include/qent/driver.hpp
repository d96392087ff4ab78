#pragma once

// Batch driver: ensemble simulation, classical estimates, analysis and
// persistence of run records.
//
// A run directory holds
//   purity.csv    step,time,purity_mean,purity_stderr,linear_entropy
//   members.csv   step,m0,m1,...      per-member purity
//   offdiag.csv   step,separation,profile_mean,profile_stderr
//   record.json   config, seed, version, classical estimates, fits, report
// Floats in CSV files use 17 significant digits.

#include "qent/analysis.hpp"
#include "qent/classical.hpp"
#include "qent/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qent {

const char* version();

struct ProfileSnapshot {
    int step = 0;
    std::vector<double> mean;    // indexed by separation s (units of 1/N)
    std::vector<double> stderr;
};

struct EnsembleOutput {
    std::vector<std::vector<double>> members;  // purity per member, steps 0..n_steps
    std::vector<ProfileSnapshot> profiles;
};

// (q1, p1, q2, p2) of member i: pinned centre or draw from Rng(seed + i).
std::array<double, 4> member_centers(const ExperimentConfig& config, int member);

std::vector<int> default_profile_steps(int n_steps);

EnsembleOutput simulate_ensemble(const ExperimentConfig& config, int workers);

struct ClassicalReport {
    LyapunovEstimate lyapunov;            // coupled map, gives lambda1 + lambda2
    LyapunovEstimate lyapunov_uncoupled;  // eps = 0, gives the Ehrenfest time
    CorrelatorEstimate gamma_big;
    CorrelatorEstimate gamma_small;
    // Uncoupled motion counts as regular when lambda1 does not exceed the
    // 2 ln(T) / T that linear shear alone produces over T steps.
    bool regular = false;
    std::optional<double> tau;
    std::vector<std::string> flags;
};

ClassicalReport run_classical(const ExperimentConfig& config);

struct FitSummary {
    DecayFit fit;
    double jackknife_stderr = 0.0;
    // max(regression stderr, jackknife stderr over ensemble members)
    double combined_stderr() const { return std::max(fit.stderr, jackknife_stderr); }
};

struct RunRecord {
    ExperimentConfig config;
    PuritySeries series;
    std::vector<std::vector<double>> members;
    std::vector<ProfileSnapshot> profiles;
    ClassicalReport classical;
    RegimePrediction prediction;
    RegimeReport report;
    FitSummary exponential;
    FitSummary power_law;
    std::vector<std::string> warnings;
    std::string software_version;
    std::string started_at;
    std::string finished_at;

    // The fit that select_regime preferred (exponential when ambiguous).
    const FitSummary& selected_fit() const;
};

// Pure post-processing of a simulated (or reloaded) ensemble.
void analyze(RunRecord& record);

RunRecord run_experiment(const ExperimentConfig& config, int workers);

void write_record(const RunRecord& record, const std::filesystem::path& dir);
RunRecord load_record(const std::filesystem::path& dir);
nlohmann::json record_json(const RunRecord& record);

std::string purity_csv(const PuritySeries& series);
PuritySeries parse_purity_csv(const std::string& text, const ModelParams& params);

// Simulates, analyzes and writes the record into config.outputs.
RunRecord cmd_run(const ExperimentConfig& config);

struct SweepRow {
    std::string param;
    double value = 0.0;
    std::string model = "none";
    double rate_or_exponent = 0.0;
    double stderr = 0.0;
    double rate_golden_rule = 0.0;
    double rate_lyapunov = 0.0;
    double saturation = 0.0;
    std::string run_dir;
    std::string error;
};

SweepRow summary_row(const RunRecord& record, const std::string& param, double value);

struct SweepSummary {
    std::string param;
    std::vector<SweepRow> rows;
};

// One run per value into outputs/<param>_<value>, plus summary.csv and summary.json.
SweepSummary cmd_sweep(const ExperimentConfig& config, const std::string& param, const std::vector<double>& values);
void write_sweep_summary(const SweepSummary& summary, const std::filesystem::path& dir);
SweepSummary load_sweep_summary(const std::filesystem::path& dir);

// Classical module only: classical.json and correlation.csv in config.outputs.
ClassicalReport cmd_classical(const ExperimentConfig& config);
nlohmann::json classical_json(const ClassicalReport& report);

// SVG charts for a run directory or a sweep directory; returns written files.
std::vector<std::filesystem::path> cmd_plot(const std::filesystem::path& path);

}  // namespace qent
