#include "qent/driver.hpp"
#include "qent/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

namespace {

int fail(const std::string& kind, const std::string& message, const std::string& field = {})
{
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (!field.empty()) j["field"] = field;
    std::cerr << j.dump() << '\n';
    return 1;
}

void print_run(const qent::RunRecord& rec)
{
    const auto& f = rec.selected_fit();
    std::printf("run dir      %s\n", rec.config.outputs.c_str());
    std::printf("regime       %s, selected %s\n", qent::to_string(rec.report.status), rec.report.selected.c_str());
    if (f.fit.valid()) {
        std::printf("fit          %s %.6g +- %.2g on [%d, %d], r^2 %.4f\n", qent::to_string(f.fit.model),
                    f.fit.rate_or_exponent, f.combined_stderr(), f.fit.window.lo, f.fit.window.hi, f.fit.r_squared);
    }
    std::printf("2G/h^2       %.6g\n", rec.prediction.rate_golden_rule);
    std::printf("l1+l2        %.6g\n", rec.prediction.rate_lyapunov);
    std::printf("saturation   %.6g (2/N = %.6g)\n", rec.report.saturation_observed, rec.prediction.saturation);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement production of two interacting kicked particles"};
    app.set_version_flag("--version", qent::version());
    app.require_subcommand(1);

    std::string run_config;
    auto* run = app.add_subcommand("run", "simulate one experiment and write its run directory");
    run->add_option("config", run_config, "experiment JSON")->required();

    std::string sweep_config, sweep_param;
    std::vector<double> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "one run per parameter value plus a summary table");
    sweep->add_option("config", sweep_config, "experiment JSON")->required();
    sweep->add_option("--param", sweep_param, "eps, K, N or zeta")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required()->delimiter(',');

    std::string classical_config;
    auto* classical = app.add_subcommand("classical", "Lyapunov exponents and interaction correlators only");
    classical->add_option("config", classical_config, "experiment JSON")->required();

    std::string plot_path;
    auto* plot = app.add_subcommand("plot", "SVG charts for a run or sweep directory");
    plot->add_option("path", plot_path, "run or sweep directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        if (*run) {
            print_run(qent::cmd_run(qent::load_config(run_config)));
        } else if (*sweep) {
            const auto summary = qent::cmd_sweep(qent::load_config(sweep_config), sweep_param, sweep_values);
            int failed = 0;
            std::printf("%-12s %-12s %-14s %-10s %-12s %-12s\n", sweep_param.c_str(), "model", "rate/exp", "stderr",
                        "2G/h^2", "l1+l2");
            for (const auto& r : summary.rows) {
                if (!r.error.empty()) {
                    ++failed;
                    std::printf("%-12.6g error: %s\n", r.value, r.error.c_str());
                    continue;
                }
                std::printf("%-12.6g %-12s %-14.6g %-10.2g %-12.6g %-12.6g\n", r.value, r.model.c_str(),
                            r.rate_or_exponent, r.stderr, r.rate_golden_rule, r.rate_lyapunov);
            }
            if (failed > 0) return fail("sweep", std::to_string(failed) + " sweep point(s) failed");
        } else if (*classical) {
            const auto r = qent::cmd_classical(qent::load_config(classical_config));
            std::printf("lambda1  %.6g +- %.2g\n", r.lyapunov.lambda1, r.lyapunov.stderr);
            std::printf("lambda2  %.6g +- %.2g\n", r.lyapunov.lambda2, r.lyapunov.stderr2);
            std::printf("Gamma    %.6g +- %.2g\n", r.gamma_big.gamma_big, r.gamma_big.stderr);
            std::printf("gamma    %.6g +- %.2g\n", r.gamma_small.gamma_big, r.gamma_small.stderr);
            if (r.tau) std::printf("tau      %.6g\n", *r.tau);
        } else if (*plot) {
            for (const auto& p : qent::cmd_plot(plot_path)) std::printf("%s\n", p.string().c_str());
        }
    } catch (const qent::ConfigError& e) {
        return fail("config", e.what(), e.field());
    } catch (const qent::NormError& e) {
        return fail("numerical", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
