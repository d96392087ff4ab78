#pragma once

// Decay-law fits of purity time series and the three-regime comparison
// against classical predictions.

#include "qent/qdynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qent {

struct PuritySeries {
    std::vector<int> times;          // kick counts, times[0] = 0
    std::vector<double> purity;      // ensemble mean
    std::vector<double> purity_stderr;
    ModelParams params;
    int ensemble_size = 1;
    std::uint64_t seed = 0;

    std::size_t size() const { return times.size(); }
    // Throws std::invalid_argument if purity[0] != 1 or a value leaves [1/N, 1].
    void validate() const;
};

// Ensemble mean and standard error of per-member series of equal length.
PuritySeries make_series(const std::vector<std::vector<double>>& members, const ModelParams& params,
                         std::uint64_t seed);

enum class DecayModel { exponential, power_law, none };
const char* to_string(DecayModel m);
DecayModel decay_model_from_string(const std::string& s);

// Inclusive range of kick counts.
struct FitWindow {
    int lo = 0;
    int hi = 0;
    int length() const { return hi >= lo ? hi - lo + 1 : 0; }
};

struct DecayFit {
    DecayModel model = DecayModel::none;
    double rate_or_exponent = 0.0;
    double stderr = 0.0;
    double intercept = 0.0;
    FitWindow window;
    double r_squared = 0.0;
    int n_points = 0;
    std::string diagnostic;

    bool valid() const { return model != DecayModel::none; }
};

// Random-matrix floor 2/N used for the late-time purity.
double saturation_estimate(const GridSpec& grid);

// Least squares of ln(P - floor) against t. Points with P <= 3 floor are
// dropped; fewer than 5 points, or a non-positive rate, give model none.
DecayFit fit_exponential(const PuritySeries& series, FitWindow window, double floor);
DecayFit fit_exponential(const PuritySeries& series, FitWindow window);

// Least squares of ln(P - floor) against ln t; t = 0 is never used.
DecayFit fit_power_law(const PuritySeries& series, FitWindow window, double floor);
DecayFit fit_power_law(const PuritySeries& series, FitWindow window);

// Delete-one jackknife standard error of a fitted rate over ensemble members.
double jackknife_stderr(const std::vector<std::vector<double>>& members, DecayModel model, FitWindow window,
                        double floor);

struct RegimePrediction {
    double rate_golden_rule = 0.0;  // 2 Gamma / h_eff^2
    double rate_lyapunov = 0.0;     // lambda1 + lambda2
    double rate_predicted = 0.0;    // min of the two
    double saturation = 0.0;
    std::optional<double> tau_ehrenfest;  // absent for regular motion or zeta <= sigma
};

RegimePrediction predict_regimes(const ModelParams& params, double gamma_big, double lambda1, double lambda2,
                                 double sigma);

struct RegimeOptions {
    std::optional<int> window_lo;
    std::optional<int> window_hi;
    double selection_margin = 0.02;
};

enum class RegimeStatus { no_entanglement, complete, partial };
const char* to_string(RegimeStatus s);

struct RegimeReport {
    RegimeStatus status = RegimeStatus::partial;
    std::optional<FitWindow> regime_i;
    std::optional<FitWindow> regime_ii;
    std::optional<int> first_passage;  // first t with P < 3 saturation
    DecayFit exponential;
    DecayFit power_law;
    std::string selected = "none";  // exponential | power_law | ambiguous | none
    double predicted_over_fitted = 0.0;  // exponential only; 0 when unavailable
    double saturation_observed = 0.0;    // mean over the final quartile
    std::vector<std::string> missing;
};

// Regime (i) ends at the Ehrenfest time, regime (ii) runs from ceil(tau) + 1
// up to the last point above 3 saturation. Without tau the window starts at
// max(1, hi / 10) so that it spans one decade in t.
RegimeReport select_regime(const PuritySeries& series, const RegimePrediction& prediction,
                           const RegimeOptions& options = {});

// Mean purity of partial traces of Haar-random pure states on C^n x C^n.
double random_state_mean_purity(int n, int samples, std::uint64_t seed);

}  // namespace qent
