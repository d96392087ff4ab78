#include "qent/analysis.hpp"

#include "qent/reduction.hpp"
#include "qent/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qent {

void PuritySeries::validate() const
{
    if (times.size() != purity.size() || (!purity_stderr.empty() && purity_stderr.size() != purity.size())) {
        throw std::invalid_argument("purity series: column lengths differ");
    }
    if (purity.empty()) throw std::invalid_argument("purity series is empty");
    if (std::abs(purity[0] - 1.0) > 1e-8) throw std::invalid_argument("purity series must start at 1");
    const double lo = 1.0 / params.grid.n_sites() - 1e-8;
    for (double p : purity) {
        if (!(p >= lo && p <= 1.0 + 1e-8)) throw std::invalid_argument("purity value outside [1/N, 1]");
    }
}

PuritySeries make_series(const std::vector<std::vector<double>>& members, const ModelParams& params,
                         std::uint64_t seed)
{
    if (members.empty()) throw std::invalid_argument("make_series: no members");
    const std::size_t len = members.front().size();
    for (const auto& m : members) {
        if (m.size() != len) throw std::invalid_argument("make_series: member lengths differ");
    }
    PuritySeries s;
    s.params = params;
    s.ensemble_size = static_cast<int>(members.size());
    s.seed = seed;
    s.times.resize(len);
    s.purity.assign(len, 0.0);
    s.purity_stderr.assign(len, 0.0);
    const double n = static_cast<double>(members.size());
    for (std::size_t t = 0; t < len; ++t) {
        s.times[t] = static_cast<int>(t);
        double mean = 0.0;
        for (const auto& m : members) mean += m[t];
        mean /= n;
        double var = 0.0;
        for (const auto& m : members) var += (m[t] - mean) * (m[t] - mean);
        s.purity[t] = mean;
        s.purity_stderr[t] = members.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    }
    return s;
}

const char* to_string(DecayModel m)
{
    switch (m) {
    case DecayModel::exponential:
        return "exponential";
    case DecayModel::power_law:
        return "power_law";
    case DecayModel::none:
        return "none";
    }
    return "none";
}

DecayModel decay_model_from_string(const std::string& s)
{
    if (s == "exponential") return DecayModel::exponential;
    if (s == "power_law") return DecayModel::power_law;
    if (s == "none") return DecayModel::none;
    throw std::invalid_argument("unknown decay model '" + s + "'");
}

const char* to_string(RegimeStatus s)
{
    switch (s) {
    case RegimeStatus::no_entanglement:
        return "no entanglement generation";
    case RegimeStatus::complete:
        return "complete";
    case RegimeStatus::partial:
        return "partial";
    }
    return "partial";
}

double saturation_estimate(const GridSpec& grid) { return 2.0 / grid.n_sites(); }

namespace {

struct Line {
    double slope, intercept, slope_stderr, r_squared;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    Line l{};
    l.slope = sxy / sxx;
    l.intercept = my - l.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (l.intercept + l.slope * x[i]);
        sse += r * r;
    }
    l.slope_stderr = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
    l.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
    return l;
}

DecayFit fit_generic(const std::vector<double>& purity, FitWindow window, double floor, DecayModel model)
{
    DecayFit fit;
    fit.window = window;
    std::vector<double> x, y;
    int dropped = 0;
    const int last = static_cast<int>(purity.size()) - 1;
    for (int t = std::max(window.lo, 0); t <= std::min(window.hi, last); ++t) {
        if (model == DecayModel::power_law && t == 0) continue;
        const double excess = purity[t] - floor;
        if (!(purity[t] > 3.0 * floor) || !(excess > 0.0)) {
            ++dropped;
            continue;
        }
        x.push_back(model == DecayModel::power_law ? std::log(static_cast<double>(t)) : static_cast<double>(t));
        y.push_back(std::log(excess));
    }
    fit.n_points = static_cast<int>(x.size());
    if (fit.n_points < 5) {
        fit.diagnostic = "fewer than 5 usable points in window";
        if (dropped > 0) fit.diagnostic += " (" + std::to_string(dropped) + " at or below 3x floor)";
        return fit;
    }
    const Line l = least_squares(x, y);
    fit.rate_or_exponent = -l.slope;
    fit.stderr = l.slope_stderr;
    fit.intercept = l.intercept;
    fit.r_squared = l.r_squared;
    if (!(fit.rate_or_exponent > 0.0)) {
        fit.diagnostic = "non-positive fitted decay (slope " + std::to_string(l.slope) + ")";
        return fit;
    }
    fit.model = model;
    if (dropped > 0) fit.diagnostic = std::to_string(dropped) + " points at or below 3x floor skipped";
    return fit;
}

}  // namespace

DecayFit fit_exponential(const PuritySeries& series, FitWindow window, double floor)
{
    return fit_generic(series.purity, window, floor, DecayModel::exponential);
}

DecayFit fit_exponential(const PuritySeries& series, FitWindow window)
{
    return fit_exponential(series, window, saturation_estimate(series.params.grid));
}

DecayFit fit_power_law(const PuritySeries& series, FitWindow window, double floor)
{
    return fit_generic(series.purity, window, floor, DecayModel::power_law);
}

DecayFit fit_power_law(const PuritySeries& series, FitWindow window)
{
    return fit_power_law(series, window, saturation_estimate(series.params.grid));
}

double jackknife_stderr(const std::vector<std::vector<double>>& members, DecayModel model, FitWindow window,
                        double floor)
{
    const std::size_t n = members.size();
    if (n < 2 || model == DecayModel::none) return 0.0;
    const std::size_t len = members.front().size();
    std::vector<double> total(len, 0.0);
    for (const auto& m : members)
        for (std::size_t t = 0; t < len; ++t) total[t] += m[t];

    std::vector<double> estimates;
    std::vector<double> loo(len);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < len; ++t) loo[t] = (total[t] - members[i][t]) / static_cast<double>(n - 1);
        const DecayFit f = fit_generic(loo, window, floor, model);
        if (f.valid()) estimates.push_back(f.rate_or_exponent);
    }
    if (estimates.size() < 2) return 0.0;
    const double k = static_cast<double>(estimates.size());
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= k;
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    return std::sqrt((k - 1.0) / k * ss);
}

RegimePrediction predict_regimes(const ModelParams& params, double gamma_big, double lambda1, double lambda2,
                                 double sigma)
{
    RegimePrediction p;
    const double h = params.grid.h_eff();
    p.rate_golden_rule = 2.0 * gamma_big / (h * h);
    p.rate_lyapunov = lambda1 + lambda2;
    p.rate_predicted = std::min(p.rate_golden_rule, p.rate_lyapunov);
    p.saturation = saturation_estimate(params.grid);
    if (lambda1 > 0.0 && params.range_zeta > sigma) p.tau_ehrenfest = std::log(params.range_zeta / sigma) / lambda1;
    return p;
}

RegimeReport select_regime(const PuritySeries& series, const RegimePrediction& prediction,
                           const RegimeOptions& options)
{
    RegimeReport rep;
    const auto& pur = series.purity;
    const int last = static_cast<int>(pur.size()) - 1;
    if (last < 1) {
        rep.missing.push_back("series has no evolution steps");
        return rep;
    }

    const std::size_t q_start = pur.size() - std::max<std::size_t>(1, pur.size() / 4);
    double tail = 0.0;
    for (std::size_t t = q_start; t < pur.size(); ++t) tail += pur[t];
    rep.saturation_observed = tail / static_cast<double>(pur.size() - q_start);

    if (std::all_of(pur.begin(), pur.end(), [](double p) { return p > 0.99; })) {
        rep.status = RegimeStatus::no_entanglement;
        rep.selected = "none";
        return rep;
    }

    const double floor = prediction.saturation;
    for (int t = 0; t <= last; ++t) {
        if (pur[t] < 3.0 * floor) {
            rep.first_passage = t;
            break;
        }
    }
    if (!rep.first_passage) rep.missing.push_back("saturation regime (iii) not reached");

    int hi = rep.first_passage ? *rep.first_passage - 1 : last;
    int lo = 1;
    if (prediction.tau_ehrenfest) {
        const double tau = *prediction.tau_ehrenfest;
        lo = static_cast<int>(std::ceil(tau)) + 1;
        rep.regime_i = FitWindow{0, std::min(static_cast<int>(std::floor(tau)), last)};
        if (last < 5.0 * tau) rep.missing.push_back("series shorter than 5 tau");
    } else {
        lo = std::max(1, hi / 10);
        rep.missing.push_back("no Ehrenfest time (regular motion): regime (i) not delimited");
    }
    if (options.window_lo) lo = *options.window_lo;
    if (options.window_hi) hi = *options.window_hi;

    const FitWindow w{lo, hi};
    rep.regime_ii = w;
    rep.exponential = fit_exponential(series, w, floor);
    rep.power_law = fit_power_law(series, w, floor);

    const bool ev = rep.exponential.valid();
    const bool pv = rep.power_law.valid();
    if (!ev && !pv) {
        rep.selected = "none";
        rep.missing.push_back("regime (ii) fit failed: " + rep.exponential.diagnostic);
    } else if (ev && !pv) {
        rep.selected = "exponential";
    } else if (pv && !ev) {
        rep.selected = "power_law";
    } else {
        const double d = rep.exponential.r_squared - rep.power_law.r_squared;
        if (d >= options.selection_margin) rep.selected = "exponential";
        else if (-d >= options.selection_margin) rep.selected = "power_law";
        else rep.selected = "ambiguous";
    }
    if (ev && rep.exponential.rate_or_exponent > 0.0) {
        rep.predicted_over_fitted = prediction.rate_predicted / rep.exponential.rate_or_exponent;
    }
    rep.status = rep.missing.empty() ? RegimeStatus::complete : RegimeStatus::partial;
    return rep;
}

double random_state_mean_purity(int n, int samples, std::uint64_t seed)
{
    const GridSpec grid(n);
    Rng rng(seed);
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<cplx> amp(static_cast<std::size_t>(n) * n);
        for (auto& z : amp) z = cplx(rng.normal(), rng.normal());
        QuantumState st(grid, 2, std::move(amp));
        st.normalize();
        acc += purity_direct(st);
    }
    return acc / samples;
}

}  // namespace qent
