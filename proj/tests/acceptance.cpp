// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion numbers...]   (default: all)

#include "qent/driver.hpp"
#include "qent/parallel.hpp"
#include "qent/reduction.hpp"
#include "qent/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace qent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

QuantumState random_state(const GridSpec& g, Rng& rng)
{
    std::vector<cplx> v(static_cast<std::size_t>(g.n_sites()) * g.n_sites());
    for (auto& z : v) z = {rng.normal(), rng.normal()};
    QuantumState s(g, 2, std::move(v));
    s.normalize();
    return s;
}

ExperimentConfig base_config(int n, double K, double eps, double zeta, int steps, int members)
{
    ExperimentConfig c;
    c.n_sites = n;
    c.kick_K = K;
    c.eps = eps;
    c.zeta = zeta;
    c.n_steps = steps;
    c.ensemble_size = members;
    c.seed = 20240;
    c.outputs = (fs::temp_directory_path() / "qent_acceptance").string();
    return c;
}

void note(const std::string& s) { std::printf("      %s\n", s.c_str()); }

// 1. Oracle equivalence
Outcome oracle_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1);
    double worst_trace = 0.0;
    const GridSpec g6(6);
    for (int i = 0; i < 50; ++i) {
        const auto s = random_state(g6, rng);
        const auto rho = partial_trace(s);
        for (int x = 0; x < 6; ++x) {
            for (int y = 0; y < 6; ++y) {
                cplx ref = 0.0;
                for (int r = 0; r < 6; ++r) ref += s.at(x, r) * std::conj(s.at(y, r));
                worst_trace = std::max(worst_trace, std::abs(rho(x, y) - ref));
            }
        }
    }
    double worst_purity = 0.0;
    const GridSpec g16(16);
    for (int i = 0; i < 50; ++i) {
        const auto s = random_state(g16, rng);
        worst_purity = std::max(worst_purity, std::abs(purity_direct(s) - purity(partial_trace(s))));
    }
    const double dt = seconds_since(t0);
    return {worst_trace <= 1e-12 && worst_purity <= 1e-10 && dt < 10.0,
            fmt("partial trace max dev %.2e (<= 1e-12), purity_direct max dev %.2e (<= 1e-10), %.2f s (< 10 s)",
                worst_trace, worst_purity, dt)};
}

// 2. Zero-coupling identity
Outcome zero_coupling()
{
    const auto t0 = std::chrono::steady_clock::now();
    auto c = base_config(128, 10.0, 0.0, 0.1, 500, 4);
    c.profile_steps = {0};
    const auto out = simulate_ensemble(c, default_workers());
    double worst = 0.0;
    for (const auto& m : out.members) {
        for (double p : m) worst = std::max(worst, std::abs(p - 1.0));
    }
    const double dt = seconds_since(t0);
    return {worst < 1e-8 && dt < 60.0,
            fmt("max |P(t) - 1| = %.2e over 4 members x 501 steps (< 1e-8), %.1f s (< 60 s)", worst, dt)};
}

struct RateRun {
    double value = 0.0;
    double rate = 0.0;
    double stderr = 0.0;
    double golden = 0.0;
    double lyap = 0.0;
    int lo = 0, hi = 0, n_points = 0;
    std::string selected;
    bool valid = false;
};

RateRun chaotic_rate(ExperimentConfig c)
{
    const RunRecord rec = run_experiment(c, default_workers());
    RateRun r;
    r.golden = rec.prediction.rate_golden_rule;
    r.lyap = rec.prediction.rate_lyapunov;
    r.selected = rec.report.selected;
    r.valid = rec.exponential.fit.valid();
    r.rate = rec.exponential.fit.rate_or_exponent;
    r.stderr = rec.exponential.combined_stderr();
    r.lo = rec.exponential.fit.window.lo;
    r.hi = rec.exponential.fit.window.hi;
    r.n_points = rec.exponential.fit.n_points;
    return r;
}

// Run length long enough to see the purity fall by about e^-4 at the
// golden-rule rate, capped to keep the run affordable.
int steps_for(double eps, double K, double zeta, int n)
{
    ModelParams p;
    p.grid = GridSpec(n);
    p.kick_K = K;
    p.coupling_eps = eps;
    p.range_zeta = zeta;
    const auto g = correlator_gamma_big(p, 200, 2000, 10, 7);
    const double rate = 2.0 * g.gamma_big / (p.grid.h_eff() * p.grid.h_eff());
    return std::clamp(static_cast<int>(std::ceil(4.0 / rate)), 40, 450);
}

// 3. Golden-rule scaling
Outcome golden_rule()
{
    const int n = 256;
    const double zeta = 0.1;
    std::vector<RateRun> runs;
    for (double eps : {1e-4, 2e-4, 4e-4, 1e-3}) {
        auto c = base_config(n, 10.0, eps, zeta, steps_for(eps, 10.0, zeta, n), 32);
        auto r = chaotic_rate(c);
        r.value = eps;
        note(fmt("eps %.0e: rate %.5g +- %.2g on [%d, %d] (%d pts), 2G/h^2 %.5g, ratio %.3f", eps, r.rate, r.stderr,
                 r.lo, r.hi, r.n_points, r.golden, r.rate / r.golden));
        runs.push_back(r);
    }
    bool all_valid = true;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : runs) {
        all_valid = all_valid && r.valid;
        const double x = std::log(r.value), y = std::log(r.rate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(runs.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const bool slope_ok = all_valid && std::abs(slope - 2.0) <= 0.3;

    const double eps = 3e-4;
    std::vector<RateRun> ks;
    for (double K : {8.0, 10.0, 12.0}) {
        auto c = base_config(n, K, eps, zeta, steps_for(eps, K, zeta, n), 32);
        auto r = chaotic_rate(c);
        r.value = K;
        note(fmt("K %.0f, eps 3e-4: rate %.5g +- %.2g, 2G/h^2 %.5g, rate/(2G/h^2) %.3f, l1+l2 %.3f", K, r.rate,
                 r.stderr, r.golden, r.rate / r.golden, r.lyap));
        ks.push_back(r);
    }
    bool ks_ok = true;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            const double se = std::hypot(ks[i].stderr, ks[j].stderr);
            const double z = std::abs(ks[i].rate - ks[j].rate) / se;
            worst_z = std::max(worst_z, z);
            ks_ok = ks_ok && ks[i].valid && ks[j].valid && z <= 2.0;
        }
    }
    const double lyap_spread = (ks.back().lyap - ks.front().lyap) / ks[1].lyap;
    double rate_lo = ks[0].rate, rate_hi = ks[0].rate;
    for (const auto& r : ks) {
        rate_lo = std::min(rate_lo, r.rate);
        rate_hi = std::max(rate_hi, r.rate);
    }
    return {slope_ok && ks_ok,
            fmt("log-log slope %.3f (2.0 +- 0.3) %s; K in {8,10,12}: worst pair %.1f combined SE (<= 2) %s; "
                "rate spread %.1f%% while l1+l2 spreads %.1f%%",
                slope, slope_ok ? "ok" : "FAIL", worst_z, ks_ok ? "ok" : "FAIL",
                100.0 * (rate_hi - rate_lo) / ks[1].rate, 100.0 * lyap_spread)};
}

// 4. Lyapunov bound at the strongest stable coupling
Outcome lyapunov_bound()
{
    const int n = 256;
    RateRun best;
    bool found = false;
    for (double eps : {1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2, 6.4e-2, 0.128, 0.256}) {
        auto c = base_config(n, 10.0, eps, 0.1, 60, 16);
        const auto r = chaotic_rate(c);
        const bool stable = r.valid && r.n_points >= 5 && r.selected != "power_law" && eps <= c.kick_K;
        note(fmt("eps %.3g: %s, rate %.4g (%d pts), l1+l2 %.4g", eps, stable ? "stable" : "unstable fit", r.rate,
                 r.n_points, r.lyap));
        if (!stable) break;
        best = r;
        best.value = eps;
        found = true;
    }
    if (!found) return {false, "no coupling passed the stability checks"};
    const double bound = 1.3 * best.lyap;
    return {best.rate <= bound,
            fmt("largest stable eps %.3g: fitted rate %.4g <= 1.3 (l1+l2) = %.4g", best.value, best.rate, bound)};
}

// 5. Regular power law
Outcome regular_power_law()
{
    auto c = base_config(256, 0.5, 0.007, 0.05, 100, 64);
    const RunRecord rec = run_experiment(c, default_workers());
    const auto& pl = rec.report.power_law;
    const auto& ex = rec.report.exponential;
    const double margin = pl.r_squared - ex.r_squared;
    const double decades = pl.valid() ? std::log10(static_cast<double>(pl.window.hi) / pl.window.lo) : 0.0;
    const bool ok = rec.report.selected == "power_law" && margin >= 0.02 && pl.valid() &&
                    std::abs(pl.rate_or_exponent - 2.0) <= 0.5 && decades >= 1.0;
    note(fmt("uncoupled l1 %.2g (%s), coupled l1 %.3g", rec.classical.lyapunov_uncoupled.lambda1,
             rec.classical.regular ? "regular" : "chaotic", rec.classical.lyapunov.lambda1));
    return {ok, fmt("selected %s, exponent %.3f +- %.2g (2.0 +- 0.5) on [%d, %d] = %.2f decades (>= 1), "
                    "r2 power %.4f vs exp %.4f, margin %.4f (>= 0.02)",
                    rec.report.selected.c_str(), pl.rate_or_exponent, rec.power_law.combined_stderr(), pl.window.lo,
                    pl.window.hi, decades, pl.r_squared, ex.r_squared, margin)};
}

// 6. Saturation
Outcome saturation()
{
    auto c = base_config(128, 10.0, 0.05, 0.1, 500, 16);
    c.profile_steps = {0};
    const auto out = simulate_ensemble(c, default_workers());
    const auto series = make_series(out.members, c.model_params(), c.seed);
    RegimePrediction pred;
    pred.saturation = saturation_estimate(c.model_params().grid);
    const auto rep = select_regime(series, pred);
    const double floor = 2.0 / 128;
    const bool late_ok = std::abs(rep.saturation_observed - floor) <= 0.5 * floor;
    const double mc = random_state_mean_purity(32, 4000, 3);
    const double exact = 2.0 * 32 / (32.0 * 32.0 + 1.0);
    const bool mc_ok = std::abs(mc - exact) <= 0.02 * exact;
    return {late_ok && mc_ok, fmt("late-time mean %.5f vs 2/N = %.6f (+-50%%); random-state MC %.5f vs "
                                  "2N/(N^2+1) = %.5f (%.2f%%, <= 2%%)",
                                  rep.saturation_observed, floor, mc, exact, 100.0 * std::abs(mc - exact) / exact)};
}

// 7. Classical engine
Outcome classical_engine()
{
    ModelParams p;
    p.grid = GridSpec(256);
    p.kick_K = 10.0;
    p.coupling_eps = 0.0;
    p.range_zeta = 0.1;
    const auto ly = lyapunov(p, 20, 100000, 11);
    const double target = std::log(5.0);
    const bool ly_ok = std::abs(ly.lambda1 - target) <= 0.05 * target;

    ModelParams pc = p;
    pc.coupling_eps = 0.3;
    Rng rng(12);
    double worst_det = 0.0;
    for (int i = 0; i < 200; ++i) {
        PhasePoint pt;
        pt.q1 = rng.uniform();
        pt.p1 = rng.uniform() - 0.5;
        pt.q2 = rng.uniform();
        pt.p2 = rng.uniform() - 0.5;
        for (int t = 0; t < 50; ++t) {
            worst_det = std::max(worst_det, std::abs(step_jacobian(pt, pc).determinant() - 1.0));
            pt = classical_step(pt, pc);
        }
    }
    const bool det_ok = worst_det <= 1e-10;

    ModelParams p1 = p, p2 = p;
    p1.coupling_eps = 0.01;
    p2.coupling_eps = 0.02;
    const auto g1 = correlator_gamma_big(p1, 200, 4000, 10, 13);
    const auto g2 = correlator_gamma_big(p2, 200, 4000, 10, 13);
    const double ratio = g2.gamma_big / g1.gamma_big;
    const double ratio_se = ratio * std::hypot(g1.stderr / g1.gamma_big, g2.stderr / g2.gamma_big);
    const bool ratio_ok = std::abs(ratio - 4.0) <= ratio_se;
    return {ly_ok && det_ok && ratio_ok,
            fmt("l1(K=10) %.4f +- %.1e vs ln 5 = %.4f (5%%); max |det J - 1| %.1e (<= 1e-10); "
                "G(2e)/G(e) %.12f +- %.2g",
                ly.lambda1, ly.stderr, target, worst_det, ratio, ratio_se)};
}

// 8. Off-diagonal Gaussian
// The near-diagonal Gaussian is read at t = 1, before the stretched packet folds back onto itself;
// the far band only fills in after one more free flight, so it is read at the last kick before tau.
// Both bands are printed at every snapshot.
struct NearBand {
    double r2, slope;
};

NearBand near_band(const ProfileSnapshot& prof, int n, double zeta)
{
    std::vector<double> x, y;
    for (int s = 0; s <= n / 2; ++s) {
        if (static_cast<double>(s) / n > zeta / 2.0 + 1e-12) break;
        x.push_back(std::pow(static_cast<double>(s) / n, 2));
        y.push_back(std::log(prof.mean[s]));
    }
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / k;
        my += y[i] / k;
    }
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    return {sxy * sxy / (sxx * syy), sxy / sxx};
}

// worst |profile - band mean| in units of the per-point standard error over min(s, N - s)/N >= 0.3
double far_band(const ProfileSnapshot& prof, int n)
{
    double band_mean = 0.0;
    int band_n = 0;
    for (int s = 0; s < n; ++s) {
        if (static_cast<double>(std::min(s, n - s)) / n >= 0.3) {
            band_mean += prof.mean[s];
            ++band_n;
        }
    }
    band_mean /= band_n;
    double worst = 0.0;
    for (int s = 0; s < n; ++s) {
        if (static_cast<double>(std::min(s, n - s)) / n < 0.3) continue;
        const double se = prof.stderr[s];
        const double dev = std::abs(prof.mean[s] - band_mean);
        worst = std::max(worst, se > 0 ? dev / se : (dev == 0 ? 0.0 : 1e9));
    }
    return worst;
}

Outcome offdiag_gaussian()
{
    const int n = 1024;
    auto c = base_config(n, 10.0, 1e-3, 0.1, 2, 32);
    c.sigma = 1.0 / n;
    c.profile_steps = {1, 2};
    const double tau = ehrenfest_time(std::log(5.0), c.zeta, *c.sigma);
    const auto out = simulate_ensemble(c, default_workers());

    for (const auto& p : out.profiles) {
        const auto nb = near_band(p, n, c.zeta);
        note(fmt("t = %d: near r2 %.4f slope %.3g, far worst %.2f SE", p.step, nb.r2, nb.slope, far_band(p, n)));
    }
    const int t_far = static_cast<int>(std::ceil(tau)) - 1;
    const auto nb = near_band(out.profiles.at(0), n, c.zeta);
    const double worst = far_band(out.profiles.at(1), n);
    const bool near_ok = nb.r2 >= 0.9 && nb.slope < 0.0;
    const bool far_ok = worst <= 3.0;
    return {t_far == 2 && near_ok && far_ok,
            fmt("tau = %.2f; t = 1, s <= zeta/2: r2 %.4f (>= 0.9), slope %.3g; t = %d, s >= 0.3: worst deviation "
                "%.2f SE (<= 3)",
                tau, nb.r2, nb.slope, t_far, worst)};
}

// 9. Determinism
Outcome determinism()
{
    auto c = base_config(64, 10.0, 0.02, 0.1, 60, 8);
    const fs::path root = fs::temp_directory_path() / "qent_acceptance_det";
    fs::remove_all(root);
    auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::vector<std::string> csv;
    for (int workers : {1, 3}) {
        RunRecord rec = run_experiment(c, workers);
        const fs::path dir = root / ("w" + std::to_string(workers));
        write_record(rec, dir);
        csv.push_back(read(dir / "purity.csv"));
    }
    RunRecord again = run_experiment(c, 1);
    write_record(again, root / "again");
    csv.push_back(read(root / "again" / "purity.csv"));
    const bool ok = !csv[0].empty() && csv[0] == csv[1] && csv[0] == csv[2];
    return {ok, fmt("purity.csv (%zu bytes) identical across repeat runs and 1 vs 3 workers: %s", csv[0].size(),
                    ok ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "oracle equivalence", oracle_equivalence}, {2, "zero-coupling identity", zero_coupling},
        {3, "golden-rule scaling", golden_rule},       {4, "Lyapunov bound", lyapunov_bound},
        {5, "regular power law", regular_power_law},   {6, "saturation", saturation},
        {7, "classical engine", classical_engine},     {8, "off-diagonal Gaussian", offdiag_gaussian},
        {9, "determinism", determinism},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("[%s] criterion %d [PRIMARY] %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
