#include "qent/config.hpp"

#include "qent/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace qent {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& prefix)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) throw ConfigError(prefix + it.key(), "unknown key");
    }
}

template <typename T>
T get_field(const json& j, const std::string& key, const std::string& field)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(field, std::string("bad value: ") + e.what());
    }
}

int get_int(const json& j, const std::string& key, const std::string& field)
{
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    return get_field<int>(j, key, field);
}

double get_real(const json& j, const std::string& key, const std::string& field)
{
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return get_field<double>(j, key, field);
}

std::optional<int> get_opt_int(const json& j, const std::string& key, const std::string& field)
{
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_int(j, key, field);
}

}  // namespace

std::vector<std::string> ExperimentConfig::validate() const
{
    try {
        (void)GridSpec(n_sites);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("N", e.what());
    }
    const GridSpec grid(n_sites);
    if (!(kick_K >= 0.0) || !std::isfinite(kick_K)) throw ConfigError("K", "must be a finite non-negative number");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw ConfigError("eps", "must be a finite non-negative number");
    if (!(zeta >= 2.0 / n_sites && zeta <= 0.5)) throw ConfigError("zeta", "must lie in [2/N, 0.5]");
    if (n_steps < 1) throw ConfigError("n_steps", "must be >= 1");
    const double s = packet_width();
    if (!(s >= 1.0 / n_sites && s <= 0.1)) throw ConfigError("sigma", "must lie in [1/N, 0.1]");
    if (centers.empty() && ensemble_size < 1) throw ConfigError("ensemble_size", "must be >= 1");
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const auto& c = centers[i];
        const std::string f = "centers[" + std::to_string(i) + "]";
        if (!(c[0] >= 0.0 && c[0] < 1.0 && c[2] >= 0.0 && c[2] < 1.0)) throw ConfigError(f, "q must lie in [0, 1)");
        if (!(c[1] >= -0.5 && c[1] < 0.5 && c[3] >= -0.5 && c[3] < 0.5)) {
            throw ConfigError(f, "p must lie in [-1/2, 1/2)");
        }
    }
    if (outputs.empty()) throw ConfigError("outputs", "must be a directory path");
    if (classical.n_traj < 2) throw ConfigError("classical.n_traj", "must be >= 2");
    if (classical.n_max_lag < 0) throw ConfigError("classical.n_max_lag", "must be >= 0");
    if (classical.correlator_steps <= classical.n_max_lag) {
        throw ConfigError("classical.correlator_steps", "must exceed n_max_lag");
    }
    if (classical.lyapunov_steps < 1000) throw ConfigError("classical.lyapunov_steps", "must be >= 1000");
    if (classical.lyapunov_traj < 10) throw ConfigError("classical.lyapunov_traj", "must be >= 10");
    for (int t : profile_steps) {
        if (t < 0 || t > n_steps) throw ConfigError("profile_steps", "entries must lie in [0, n_steps]");
    }
    std::vector<std::string> warnings;
    if (eps > kick_K) warnings.push_back("eps > K: outside the weak-coupling regime");
    return warnings;
}

ModelParams ExperimentConfig::model_params() const
{
    ModelParams p;
    p.grid = GridSpec(n_sites);
    p.kick_K = kick_K;
    p.coupling_eps = eps;
    p.range_zeta = zeta;
    p.n_steps = n_steps;
    return p;
}

double ExperimentConfig::packet_width() const
{
    if (sigma) return *sigma;
    return coherent_width(GridSpec(n_sites));
}

ExperimentConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
    reject_unknown(j,
                   {"N", "K", "eps", "zeta", "sigma", "n_steps", "centers", "ensemble_size", "seed", "outputs",
                    "classical", "analysis", "profile_steps"},
                   "");
    ExperimentConfig c;
    if (j.contains("N")) c.n_sites = get_int(j, "N", "N");
    if (j.contains("K")) c.kick_K = get_real(j, "K", "K");
    if (j.contains("eps")) c.eps = get_real(j, "eps", "eps");
    if (j.contains("zeta")) c.zeta = get_real(j, "zeta", "zeta");
    if (j.contains("sigma") && !j.at("sigma").is_null()) c.sigma = get_real(j, "sigma", "sigma");
    if (j.contains("n_steps")) c.n_steps = get_int(j, "n_steps", "n_steps");
    if (j.contains("ensemble_size")) c.ensemble_size = get_int(j, "ensemble_size", "ensemble_size");
    if (j.contains("seed")) {
        const json& sj = j.at("seed");
        if (!sj.is_number_integer() || (!sj.is_number_unsigned() && sj.get<std::int64_t>() < 0)) {
            throw ConfigError("seed", "expected a non-negative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("outputs")) c.outputs = get_field<std::string>(j, "outputs", "outputs");
    if (j.contains("centers")) {
        const json& cj = j.at("centers");
        if (cj.is_string()) {
            if (cj.get<std::string>() != "random") throw ConfigError("centers", "expected \"random\" or a list");
        } else if (cj.is_array()) {
            for (std::size_t i = 0; i < cj.size(); ++i) {
                const std::string f = "centers[" + std::to_string(i) + "]";
                if (!cj[i].is_array() || cj[i].size() != 4) throw ConfigError(f, "expected [q1, p1, q2, p2]");
                std::array<double, 4> a{};
                for (int k = 0; k < 4; ++k) {
                    if (!cj[i][k].is_number()) throw ConfigError(f, "expected numbers");
                    a[k] = cj[i][k].get<double>();
                }
                c.centers.push_back(a);
            }
            if (c.centers.empty()) throw ConfigError("centers", "list must not be empty");
            if (j.contains("ensemble_size") && c.ensemble_size != static_cast<int>(c.centers.size())) {
                throw ConfigError("ensemble_size", "must equal the number of pinned centers");
            }
            c.ensemble_size = static_cast<int>(c.centers.size());
        } else {
            throw ConfigError("centers", "expected \"random\" or a list");
        }
    }
    if (j.contains("classical")) {
        const json& cl = j.at("classical");
        if (!cl.is_object()) throw ConfigError("classical", "expected an object");
        reject_unknown(cl, {"n_traj", "n_max_lag", "lyapunov_steps", "lyapunov_traj", "correlator_steps"},
                       "classical.");
        if (cl.contains("n_traj")) c.classical.n_traj = get_int(cl, "n_traj", "classical.n_traj");
        if (cl.contains("n_max_lag")) c.classical.n_max_lag = get_int(cl, "n_max_lag", "classical.n_max_lag");
        if (cl.contains("lyapunov_steps")) {
            c.classical.lyapunov_steps = get_int(cl, "lyapunov_steps", "classical.lyapunov_steps");
        }
        if (cl.contains("lyapunov_traj")) {
            c.classical.lyapunov_traj = get_int(cl, "lyapunov_traj", "classical.lyapunov_traj");
        }
        if (cl.contains("correlator_steps")) {
            c.classical.correlator_steps = get_int(cl, "correlator_steps", "classical.correlator_steps");
        }
    }
    if (j.contains("analysis")) {
        const json& an = j.at("analysis");
        if (!an.is_object()) throw ConfigError("analysis", "expected an object");
        reject_unknown(an, {"window_lo", "window_hi"}, "analysis.");
        c.window_lo = get_opt_int(an, "window_lo", "analysis.window_lo");
        c.window_hi = get_opt_int(an, "window_hi", "analysis.window_hi");
    }
    if (j.contains("profile_steps")) {
        const json& ps = j.at("profile_steps");
        if (!ps.is_array()) throw ConfigError("profile_steps", "expected a list of step indices");
        for (const auto& v : ps) {
            if (!v.is_number_integer()) throw ConfigError("profile_steps", "expected integers");
            c.profile_steps.push_back(v.get<int>());
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig& c)
{
    json j;
    j["N"] = c.n_sites;
    j["K"] = c.kick_K;
    j["eps"] = c.eps;
    j["zeta"] = c.zeta;
    j["sigma"] = c.sigma ? json(*c.sigma) : json(nullptr);
    j["n_steps"] = c.n_steps;
    if (c.centers.empty()) {
        j["centers"] = "random";
    } else {
        json arr = json::array();
        for (const auto& a : c.centers) arr.push_back({a[0], a[1], a[2], a[3]});
        j["centers"] = arr;
    }
    j["ensemble_size"] = c.members();
    j["seed"] = c.seed;
    j["outputs"] = c.outputs;
    j["classical"] = {{"n_traj", c.classical.n_traj},
                      {"n_max_lag", c.classical.n_max_lag},
                      {"lyapunov_steps", c.classical.lyapunov_steps},
                      {"lyapunov_traj", c.classical.lyapunov_traj},
                      {"correlator_steps", c.classical.correlator_steps}};
    j["analysis"] = {{"window_lo", c.window_lo ? json(*c.window_lo) : json(nullptr)},
                     {"window_hi", c.window_hi ? json(*c.window_hi) : json(nullptr)}};
    j["profile_steps"] = c.profile_steps;
    return j;
}

ExperimentConfig with_parameter(const ExperimentConfig& base, const std::string& param, double value)
{
    ExperimentConfig c = base;
    if (param == "eps") {
        c.eps = value;
    } else if (param == "K") {
        c.kick_K = value;
    } else if (param == "zeta") {
        c.zeta = value;
    } else if (param == "N") {
        if (value != std::floor(value)) throw ConfigError("N", "sweep values must be integers");
        c.n_sites = static_cast<int>(value);
    } else {
        throw ConfigError("--param", "must be one of eps, K, N, zeta (got '" + param + "')");
    }
    c.validate();
    return c;
}

}  // namespace qent
