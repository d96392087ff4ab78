#include "qent/driver.hpp"

#include "qent/errors.hpp"
#include "qent/parallel.hpp"
#include "qent/reduction.hpp"
#include "qent/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef QENT_VERSION
#define QENT_VERSION "0.0.0"
#endif

namespace qent {

using nlohmann::json;
namespace fs = std::filesystem;

const char* version() { return QENT_VERSION; }

namespace {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    for (auto& l : split(text, '\n')) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
        if (!l.empty()) out.push_back(l);
    }
    return out;
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_nan_safe(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

}  // namespace

std::array<double, 4> member_centers(const ExperimentConfig& config, int member)
{
    if (!config.centers.empty()) return config.centers.at(member);
    Rng rng(config.seed + static_cast<std::uint64_t>(member));
    std::array<double, 4> c{};
    c[0] = rng.uniform();
    c[1] = rng.uniform() - 0.5;
    c[2] = rng.uniform();
    c[3] = rng.uniform() - 0.5;
    return c;
}

std::vector<int> default_profile_steps(int n_steps)
{
    std::set<int> s;
    for (int t : {0, 1, 2, 5, 10, 20, 50, 100, 200, 500}) {
        if (t <= n_steps) s.insert(t);
    }
    s.insert(n_steps);
    return {s.begin(), s.end()};
}

EnsembleOutput simulate_ensemble(const ExperimentConfig& config, int workers)
{
    config.validate();
    const ModelParams params = config.model_params();
    const int members = config.members();
    const double sigma = config.packet_width();
    const std::vector<int> snaps = config.profile_steps.empty() ? default_profile_steps(config.n_steps)
                                                                : config.profile_steps;
    const std::set<int> snap_set(snaps.begin(), snaps.end());
    const int n = params.grid.n_sites();

    std::vector<std::vector<double>> purity(members);
    std::vector<std::map<int, std::vector<double>>> profiles(members);

    parallel_for(members, workers, [&](std::size_t i) {
        const auto c = member_centers(config, static_cast<int>(i));
        const auto a = make_wavepacket({c[0], c[1], sigma}, params.grid);
        const auto b = make_wavepacket({c[2], c[3], sigma}, params.grid);
        QuantumState st = tensor_product(a, b);
        auto& series = purity[i];
        series.reserve(config.n_steps + 1);
        series.push_back(purity_direct(st));
        if (snap_set.count(0)) profiles[i][0] = offdiag_profile(partial_trace(st));
        const FloquetPropagator prop(params);
        for (int t = 1; t <= config.n_steps; ++t) {
            try {
                prop.step(st);
            } catch (const NormError& e) {
                throw NormError("member " + std::to_string(i) + " step " + std::to_string(t), e.norm());
            }
            series.push_back(purity_direct(st));
            if (snap_set.count(t)) profiles[i][t] = offdiag_profile(partial_trace(st));
        }
    });

    EnsembleOutput out;
    out.members = std::move(purity);
    for (int t : snap_set) {
        ProfileSnapshot snap;
        snap.step = t;
        snap.mean.assign(n, 0.0);
        snap.stderr.assign(n, 0.0);
        for (int s = 0; s < n; ++s) {
            double m = 0.0;
            for (int i = 0; i < members; ++i) m += profiles[i][t][s];
            m /= members;
            double v = 0.0;
            for (int i = 0; i < members; ++i) v += (profiles[i][t][s] - m) * (profiles[i][t][s] - m);
            snap.mean[s] = m;
            snap.stderr[s] = members > 1 ? std::sqrt(v / (members - 1.0) / members) : 0.0;
        }
        out.profiles.push_back(std::move(snap));
    }
    return out;
}

ClassicalReport run_classical(const ExperimentConfig& config)
{
    config.validate();
    const ModelParams params = config.model_params();
    const auto& cs = config.classical;
    ClassicalReport r;
    r.lyapunov = lyapunov(params, cs.lyapunov_traj, cs.lyapunov_steps, config.seed);
    ModelParams uncoupled = params;
    uncoupled.coupling_eps = 0.0;
    r.lyapunov_uncoupled =
        params.coupling_eps == 0.0 ? r.lyapunov : lyapunov(uncoupled, cs.lyapunov_traj, cs.lyapunov_steps, config.seed);
    const double shear = 2.0 * std::log(static_cast<double>(cs.lyapunov_steps)) / cs.lyapunov_steps;
    r.regular = r.lyapunov_uncoupled.lambda1 <= shear;
    r.gamma_big = correlator_gamma_big(params, cs.n_traj, cs.correlator_steps, cs.n_max_lag, config.seed);
    r.gamma_small = correlator_gamma_small(params, cs.n_traj, cs.correlator_steps, cs.n_max_lag, config.seed);
    if (!r.lyapunov.converged) r.flags.push_back("lyapunov estimate not converged (stderr/mean > 0.2)");
    if (r.regular) r.flags.push_back("uncoupled motion is regular: no Ehrenfest time");
    for (const auto& w : r.gamma_big.warnings) r.flags.push_back("Gamma: " + w);
    for (const auto& w : r.gamma_small.warnings) r.flags.push_back("gamma: " + w);
    if (!r.regular) {
        try {
            r.tau = ehrenfest_time(r.lyapunov_uncoupled.lambda1, config.zeta, config.packet_width());
        } catch (const std::domain_error&) {
            r.tau.reset();
        }
    }
    return r;
}

const FitSummary& RunRecord::selected_fit() const
{
    return report.selected == "power_law" ? power_law : exponential;
}

void analyze(RunRecord& rec)
{
    const ModelParams params = rec.config.model_params();
    rec.series = make_series(rec.members, params, rec.config.seed);
    rec.prediction = predict_regimes(params, rec.classical.gamma_big.gamma_big, rec.classical.lyapunov.lambda1,
                                     rec.classical.lyapunov.lambda2, rec.config.packet_width());
    rec.prediction.tau_ehrenfest = rec.classical.tau;
    RegimeOptions opt;
    opt.window_lo = rec.config.window_lo;
    opt.window_hi = rec.config.window_hi;
    rec.report = select_regime(rec.series, rec.prediction, opt);
    rec.exponential = FitSummary{rec.report.exponential, 0.0};
    rec.power_law = FitSummary{rec.report.power_law, 0.0};
    if (rec.report.regime_ii) {
        const double floor = rec.prediction.saturation;
        if (rec.exponential.fit.valid()) {
            rec.exponential.jackknife_stderr =
                jackknife_stderr(rec.members, DecayModel::exponential, *rec.report.regime_ii, floor);
        }
        if (rec.power_law.fit.valid()) {
            rec.power_law.jackknife_stderr =
                jackknife_stderr(rec.members, DecayModel::power_law, *rec.report.regime_ii, floor);
        }
    }
}

RunRecord run_experiment(const ExperimentConfig& config, int workers)
{
    RunRecord rec;
    rec.config = config;
    rec.warnings = config.validate();
    rec.software_version = version();
    rec.started_at = utc_now();
    rec.classical = run_classical(config);
    for (const auto& f : rec.classical.flags) rec.warnings.push_back(f);
    EnsembleOutput ens = simulate_ensemble(config, workers);
    rec.members = std::move(ens.members);
    rec.profiles = std::move(ens.profiles);
    analyze(rec);
    rec.finished_at = utc_now();
    return rec;
}

std::string purity_csv(const PuritySeries& s)
{
    std::string out = "step,time,purity_mean,purity_stderr,linear_entropy\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double se = s.purity_stderr.empty() ? 0.0 : s.purity_stderr[i];
        out += std::to_string(s.times[i]) + ',' + std::to_string(s.times[i]) + ',' + fmt17(s.purity[i]) + ',' +
               fmt17(se) + ',' + fmt17(linear_entropy(s.purity[i])) + '\n';
    }
    return out;
}

PuritySeries parse_purity_csv(const std::string& text, const ModelParams& params)
{
    const auto lines = lines_of(text);
    if (lines.empty() || lines[0] != "step,time,purity_mean,purity_stderr,linear_entropy") {
        throw std::runtime_error("purity.csv: unexpected header");
    }
    PuritySeries s;
    s.params = params;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        if (f.size() != 5) throw std::runtime_error("purity.csv: malformed line " + std::to_string(i + 1));
        s.times.push_back(std::stoi(f[0]));
        s.purity.push_back(std::stod(f[2]));
        s.purity_stderr.push_back(std::stod(f[3]));
    }
    return s;
}

namespace {

std::string members_csv(const std::vector<std::vector<double>>& members)
{
    std::string out = "step";
    for (std::size_t i = 0; i < members.size(); ++i) out += ",m" + std::to_string(i);
    out += '\n';
    const std::size_t len = members.empty() ? 0 : members.front().size();
    for (std::size_t t = 0; t < len; ++t) {
        out += std::to_string(t);
        for (const auto& m : members) out += ',' + fmt17(m[t]);
        out += '\n';
    }
    return out;
}

std::vector<std::vector<double>> parse_members_csv(const std::string& text)
{
    const auto lines = lines_of(text);
    if (lines.empty()) throw std::runtime_error("members.csv: empty");
    const std::size_t m = split(lines[0], ',').size() - 1;
    std::vector<std::vector<double>> members(m);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        if (f.size() != m + 1) throw std::runtime_error("members.csv: malformed line " + std::to_string(i + 1));
        for (std::size_t k = 0; k < m; ++k) members[k].push_back(std::stod(f[k + 1]));
    }
    return members;
}

std::string offdiag_csv(const std::vector<ProfileSnapshot>& profiles)
{
    std::string out = "step,separation,profile_mean,profile_stderr\n";
    for (const auto& p : profiles) {
        const std::size_t n = p.mean.size();
        for (std::size_t s = 0; s < n; ++s) {
            out += std::to_string(p.step) + ',' + fmt17(static_cast<double>(s) / static_cast<double>(n)) + ',' +
                   fmt17(p.mean[s]) + ',' + fmt17(p.stderr[s]) + '\n';
        }
    }
    return out;
}

std::vector<ProfileSnapshot> parse_offdiag_csv(const std::string& text)
{
    std::vector<ProfileSnapshot> out;
    const auto lines = lines_of(text);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        if (f.size() != 4) throw std::runtime_error("offdiag.csv: malformed line " + std::to_string(i + 1));
        const int step = std::stoi(f[0]);
        if (out.empty() || out.back().step != step) out.push_back(ProfileSnapshot{step, {}, {}});
        out.back().mean.push_back(std::stod(f[2]));
        out.back().stderr.push_back(std::stod(f[3]));
    }
    return out;
}

json fit_json(const FitSummary& f)
{
    return {{"model", to_string(f.fit.model)},
            {"rate_or_exponent", f.fit.rate_or_exponent},
            {"stderr", f.fit.stderr},
            {"jackknife_stderr", f.jackknife_stderr},
            {"intercept", f.fit.intercept},
            {"window", {f.fit.window.lo, f.fit.window.hi}},
            {"r_squared", f.fit.r_squared},
            {"n_points", f.fit.n_points},
            {"diagnostic", f.fit.diagnostic}};
}

json correlator_json(const CorrelatorEstimate& c)
{
    return {{"value", c.gamma_big},          {"stderr", c.stderr},   {"correlation_curve", c.correlation_curve},
            {"curve_stderr", c.curve_stderr}, {"n_traj", c.n_traj}, {"n_steps", c.n_steps},
            {"seed", c.seed},                {"warnings", c.warnings}};
}

CorrelatorEstimate correlator_from_json(const json& j)
{
    CorrelatorEstimate c;
    c.gamma_big = j.at("value").get<double>();
    c.stderr = j.at("stderr").get<double>();
    c.correlation_curve = j.at("correlation_curve").get<std::vector<double>>();
    c.curve_stderr = j.at("curve_stderr").get<std::vector<double>>();
    c.n_traj = j.at("n_traj").get<int>();
    c.n_steps = j.at("n_steps").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.warnings = j.at("warnings").get<std::vector<std::string>>();
    return c;
}

}  // namespace

namespace {

json lyapunov_json(const LyapunovEstimate& l)
{
    return {{"lambda1", l.lambda1},
            {"lambda2", l.lambda2},
            {"stderr", l.stderr},
            {"stderr2", l.stderr2},
            {"lambda_particle1", nan_safe(l.lambda_particle1)},
            {"lambda_particle2", nan_safe(l.lambda_particle2)},
            {"converged", l.converged},
            {"n_traj", l.n_traj},
            {"n_steps", l.n_steps},
            {"seed", l.seed}};
}

LyapunovEstimate lyapunov_from_json(const json& l)
{
    LyapunovEstimate e;
    e.lambda1 = l.at("lambda1").get<double>();
    e.lambda2 = l.at("lambda2").get<double>();
    e.stderr = l.at("stderr").get<double>();
    e.stderr2 = l.at("stderr2").get<double>();
    e.lambda_particle1 = from_nan_safe(l.at("lambda_particle1"));
    e.lambda_particle2 = from_nan_safe(l.at("lambda_particle2"));
    e.converged = l.at("converged").get<bool>();
    e.n_traj = l.at("n_traj").get<int>();
    e.n_steps = l.at("n_steps").get<int>();
    e.seed = l.at("seed").get<std::uint64_t>();
    return e;
}

}  // namespace

json classical_json(const ClassicalReport& r)
{
    return {{"lyapunov", lyapunov_json(r.lyapunov)},
            {"lyapunov_uncoupled", lyapunov_json(r.lyapunov_uncoupled)},
            {"regular", r.regular},
            {"gamma_big", correlator_json(r.gamma_big)},
            {"gamma_small", correlator_json(r.gamma_small)},
            {"tau_ehrenfest", r.tau ? json(*r.tau) : json(nullptr)},
            {"flags", r.flags}};
}

namespace {

ClassicalReport classical_from_json(const json& j)
{
    ClassicalReport r;
    r.lyapunov = lyapunov_from_json(j.at("lyapunov"));
    r.lyapunov_uncoupled = lyapunov_from_json(j.at("lyapunov_uncoupled"));
    r.regular = j.at("regular").get<bool>();
    r.gamma_big = correlator_from_json(j.at("gamma_big"));
    r.gamma_small = correlator_from_json(j.at("gamma_small"));
    if (!j.at("tau_ehrenfest").is_null()) r.tau = j.at("tau_ehrenfest").get<double>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    return r;
}

json window_json(const std::optional<FitWindow>& w)
{
    return w ? json::array({w->lo, w->hi}) : json(nullptr);
}

}  // namespace

json record_json(const RunRecord& rec)
{
    const auto& p = rec.prediction;
    const auto& r = rec.report;
    json j;
    j["software_version"] = rec.software_version;
    j["started_at"] = rec.started_at;
    j["finished_at"] = rec.finished_at;
    j["config"] = to_json(rec.config);
    j["seed"] = rec.config.seed;
    j["member_seeds"] = rec.config.centers.empty() ? "seed + member index" : "pinned centers";
    j["packet_width"] = rec.config.packet_width();
    j["h_eff"] = rec.config.model_params().grid.h_eff();
    j["classical"] = classical_json(rec.classical);
    j["prediction"] = {{"rate_golden_rule", p.rate_golden_rule},
                       {"rate_lyapunov", p.rate_lyapunov},
                       {"rate_predicted", p.rate_predicted},
                       {"saturation", p.saturation},
                       {"tau_ehrenfest", p.tau_ehrenfest ? json(*p.tau_ehrenfest) : json(nullptr)}};
    j["fits"] = {{"exponential", fit_json(rec.exponential)}, {"power_law", fit_json(rec.power_law)}};
    j["regime"] = {{"status", to_string(r.status)},
                   {"selected", r.selected},
                   {"regime_i", window_json(r.regime_i)},
                   {"regime_ii", window_json(r.regime_ii)},
                   {"first_passage", r.first_passage ? json(*r.first_passage) : json(nullptr)},
                   {"predicted_over_fitted", r.predicted_over_fitted},
                   {"saturation_observed", r.saturation_observed},
                   {"missing", r.missing}};
    j["warnings"] = rec.warnings;
    return j;
}

void write_record(const RunRecord& rec, const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "purity.csv", purity_csv(rec.series));
    write_file(dir / "members.csv", members_csv(rec.members));
    write_file(dir / "offdiag.csv", offdiag_csv(rec.profiles));
    write_file(dir / "record.json", record_json(rec).dump(2) + "\n");
}

RunRecord load_record(const fs::path& dir)
{
    json j;
    try {
        j = json::parse(read_file(dir / "record.json"));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("record.json: " + std::string(e.what()));
    }
    RunRecord rec;
    rec.config = parse_config(j.at("config"));
    rec.software_version = j.at("software_version").get<std::string>();
    rec.started_at = j.at("started_at").get<std::string>();
    rec.finished_at = j.at("finished_at").get<std::string>();
    rec.classical = classical_from_json(j.at("classical"));
    rec.warnings = j.at("warnings").get<std::vector<std::string>>();
    rec.members = parse_members_csv(read_file(dir / "members.csv"));
    if (fs::exists(dir / "offdiag.csv")) rec.profiles = parse_offdiag_csv(read_file(dir / "offdiag.csv"));
    analyze(rec);
    const auto stored = parse_purity_csv(read_file(dir / "purity.csv"), rec.config.model_params());
    if (stored.purity != rec.series.purity) throw std::runtime_error("purity.csv disagrees with members.csv");
    return rec;
}

RunRecord cmd_run(const ExperimentConfig& config)
{
    RunRecord rec = run_experiment(config, default_workers());
    for (const auto& w : rec.warnings) std::cerr << "warning: " << w << '\n';
    write_record(rec, config.outputs);
    return rec;
}

SweepRow summary_row(const RunRecord& rec, const std::string& param, double value)
{
    SweepRow row;
    row.param = param;
    row.value = value;
    const std::string& sel = rec.report.selected;
    const FitSummary& f = rec.selected_fit();
    row.model = (sel == "none" || !f.fit.valid()) ? "none" : to_string(f.fit.model);
    if (row.model != "none") {
        row.rate_or_exponent = f.fit.rate_or_exponent;
        row.stderr = f.combined_stderr();
    }
    row.rate_golden_rule = rec.prediction.rate_golden_rule;
    row.rate_lyapunov = rec.prediction.rate_lyapunov;
    row.saturation = rec.report.saturation_observed;
    row.run_dir = rec.config.outputs;
    return row;
}

namespace {

std::string value_label(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json row_json(const SweepRow& r)
{
    return {{"param", r.param},
            {"value", r.value},
            {"model", r.model},
            {"rate_or_exponent", r.rate_or_exponent},
            {"stderr", r.stderr},
            {"rate_golden_rule", r.rate_golden_rule},
            {"rate_lyapunov", r.rate_lyapunov},
            {"saturation", r.saturation},
            {"run_dir", r.run_dir},
            {"error", r.error}};
}

}  // namespace

SweepSummary cmd_sweep(const ExperimentConfig& config, const std::string& param, const std::vector<double>& values)
{
    if (param != "eps" && param != "K" && param != "N" && param != "zeta") {
        throw ConfigError("--param", "must be one of eps, K, N, zeta (got '" + param + "')");
    }
    if (values.empty()) throw ConfigError("--values", "at least one value is required");
    SweepSummary summary;
    summary.param = param;
    summary.rows.resize(values.size());
    const int workers = default_workers();
    const int outer = std::max(1, std::min<int>(workers, static_cast<int>(values.size())));
    const int inner = std::max(1, workers / outer);
    const fs::path base = config.outputs;

    parallel_for(values.size(), outer, [&](std::size_t i) {
        SweepRow& row = summary.rows[i];
        row.param = param;
        row.value = values[i];
        try {
            ExperimentConfig c = with_parameter(config, param, values[i]);
            c.outputs = (base / (param + "_" + value_label(values[i]))).string();
            RunRecord rec = run_experiment(c, inner);
            write_record(rec, c.outputs);
            row = summary_row(rec, param, values[i]);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });
    write_sweep_summary(summary, base);
    return summary;
}

void write_sweep_summary(const SweepSummary& s, const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    std::string csv = "value,model,rate_or_exponent,stderr,rate_golden_rule,rate_lyapunov,saturation,error\n";
    json rows = json::array();
    for (const auto& r : s.rows) {
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        csv += fmt17(r.value) + ',' + r.model + ',' + fmt17(r.rate_or_exponent) + ',' + fmt17(r.stderr) + ',' +
               fmt17(r.rate_golden_rule) + ',' + fmt17(r.rate_lyapunov) + ',' + fmt17(r.saturation) + ',' + err +
               '\n';
        rows.push_back(row_json(r));
    }
    write_file(dir / "summary.csv", csv);
    write_file(dir / "summary.json", json{{"param", s.param}, {"rows", rows}}.dump(2) + "\n");
}

SweepSummary load_sweep_summary(const fs::path& dir)
{
    const json j = json::parse(read_file(dir / "summary.json"));
    SweepSummary s;
    s.param = j.at("param").get<std::string>();
    for (const auto& r : j.at("rows")) {
        SweepRow row;
        row.param = r.at("param").get<std::string>();
        row.value = r.at("value").get<double>();
        row.model = r.at("model").get<std::string>();
        row.rate_or_exponent = r.at("rate_or_exponent").get<double>();
        row.stderr = r.at("stderr").get<double>();
        row.rate_golden_rule = r.at("rate_golden_rule").get<double>();
        row.rate_lyapunov = r.at("rate_lyapunov").get<double>();
        row.saturation = r.at("saturation").get<double>();
        row.run_dir = r.at("run_dir").get<std::string>();
        row.error = r.at("error").get<std::string>();
        s.rows.push_back(row);
    }
    return s;
}

ClassicalReport cmd_classical(const ExperimentConfig& config)
{
    ClassicalReport r = run_classical(config);
    for (const auto& f : r.flags) std::cerr << "flag: " << f << '\n';
    const fs::path dir = config.outputs;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    json j = classical_json(r);
    j["config"] = to_json(config);
    j["software_version"] = version();
    write_file(dir / "classical.json", j.dump(2) + "\n");
    std::string csv = "lag,C_interaction,C_interaction_stderr,C_gradient,C_gradient_stderr\n";
    for (std::size_t n = 0; n < r.gamma_big.correlation_curve.size(); ++n) {
        csv += std::to_string(n) + ',' + fmt17(r.gamma_big.correlation_curve[n]) + ',' +
               fmt17(r.gamma_big.curve_stderr[n]) + ',' + fmt17(r.gamma_small.correlation_curve[n]) + ',' +
               fmt17(r.gamma_small.curve_stderr[n]) + '\n';
    }
    write_file(dir / "correlation.csv", csv);
    return r;
}

}  // namespace qent
