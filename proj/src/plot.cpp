#include "qent/driver.hpp"
#include "qent/svg.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qent {

namespace fs = std::filesystem;

namespace {

const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

void save(const fs::path& path, const std::string& svg, std::vector<fs::path>& written)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << svg;
    written.push_back(path);
}

svg::Series guide(const std::string& name, const std::vector<int>& times, double rate, const std::string& color)
{
    svg::Series s{name, {}, {}, color, true, false};
    for (int t : times) {
        s.x.push_back(t);
        s.y.push_back(std::exp(-rate * t));
    }
    return s;
}

void plot_run(const fs::path& dir, std::vector<fs::path>& written)
{
    const RunRecord rec = load_record(dir);
    const auto& s = rec.series;
    std::vector<double> t(s.times.begin(), s.times.end());
    const svg::Series purity{"purity", t, s.purity, palette[0], false, false};
    const double floor = rec.prediction.saturation;

    svg::LineChart lin("Purity", "t (kicks)", "P(t)");
    lin.log_y().add(purity);
    if (rec.prediction.rate_predicted > 0.0) {
        lin.add(guide("exp(-min(2G/h^2, l1+l2) t)", s.times, rec.prediction.rate_predicted, palette[1]));
    }
    lin.add(svg::HorizontalLine{"saturation 2/N", floor, "#d62728"});
    save(dir / "purity_linlog.svg", lin.render(), written);

    svg::LineChart loglog("Purity (log-log)", "t (kicks)", "P(t)");
    loglog.log_x().log_y().add(purity);
    if (rec.power_law.fit.valid()) {
        const auto& f = rec.power_law.fit;
        svg::Series p{"power-law fit", {}, {}, palette[2], true, false};
        for (int k = f.window.lo; k <= f.window.hi; ++k) {
            p.x.push_back(k);
            p.y.push_back(floor + std::exp(f.intercept - f.rate_or_exponent * std::log(k)));
        }
        loglog.add(p);
    }
    loglog.add(svg::HorizontalLine{"saturation 2/N", floor, "#d62728"});
    save(dir / "purity_loglog.svg", loglog.render(), written);

    if (!rec.profiles.empty()) {
        svg::LineChart prof("Off-diagonal profile", "separation |x - y|", "<|rho1(x, y)|^2>");
        prof.log_y();
        int k = 0;
        for (const auto& p : rec.profiles) {
            const std::size_t n = p.mean.size();
            svg::Series ser{"t = " + std::to_string(p.step), {}, {}, palette[k++ % 8], false, false};
            for (std::size_t j = 0; j <= n / 2; ++j) {
                ser.x.push_back(static_cast<double>(j) / static_cast<double>(n));
                ser.y.push_back(p.mean[j]);
            }
            prof.add(ser);
        }
        save(dir / "offdiag.svg", prof.render(), written);
    }
}

void plot_sweep(const fs::path& dir, std::vector<fs::path>& written)
{
    const SweepSummary sum = load_sweep_summary(dir);
    svg::Series fitted{"fitted rate", {}, {}, palette[0], false, true};
    svg::Series predicted{"min(2G/h^2, l1+l2)", {}, {}, palette[1], true, false};
    svg::Series golden{"2G/h^2", {}, {}, palette[2], true, false};
    double lyap = 0.0;
    int n_lyap = 0;
    for (const auto& r : sum.rows) {
        if (!r.error.empty()) continue;
        if (r.model != "none") {
            fitted.x.push_back(r.value);
            fitted.y.push_back(r.rate_or_exponent);
        }
        predicted.x.push_back(r.value);
        predicted.y.push_back(std::min(r.rate_golden_rule, r.rate_lyapunov));
        golden.x.push_back(r.value);
        golden.y.push_back(r.rate_golden_rule);
        lyap += r.rate_lyapunov;
        ++n_lyap;
        const fs::path run = dir / fs::path(r.run_dir).filename();
        if (!r.run_dir.empty() && fs::exists(run / "record.json")) plot_run(run, written);
    }
    svg::LineChart chart("Decay rate vs " + sum.param, sum.param, "rate per kick");
    chart.log_x().log_y().add(fitted).add(predicted).add(golden);
    if (n_lyap > 0) chart.add(svg::HorizontalLine{"l1+l2", lyap / n_lyap, "#d62728"});
    save(dir / "crossover.svg", chart.render(), written);
}

}  // namespace

std::vector<fs::path> cmd_plot(const fs::path& path)
{
    std::vector<fs::path> written;
    if (fs::exists(path / "summary.json")) {
        plot_sweep(path, written);
    } else if (fs::exists(path / "record.json")) {
        plot_run(path, written);
    } else {
        throw std::runtime_error("no record.json or summary.json under " + path.string());
    }
    return written;
}

}  // namespace qent
