#include "qent/analysis.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace qent;

namespace {

PuritySeries synthetic(int n_sites, int steps, const std::function<double(int)>& f)
{
    PuritySeries s;
    s.params.grid = GridSpec(n_sites);
    for (int t = 0; t <= steps; ++t) {
        s.times.push_back(t);
        s.purity.push_back(f(t));
    }
    return s;
}

}  // namespace

TEST_CASE("exponential fit on exact input")
{
    const auto s = synthetic(256, 40, [](int t) { return std::exp(-0.3 * t); });
    const auto fit = fit_exponential(s, {0, 30}, 0.0);
    REQUIRE(fit.valid());
    CHECK(fit.rate_or_exponent == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.n_points == 31);
}

TEST_CASE("exponential fit with the random-state floor")
{
    const double floor = 2.0 / 4096;
    const auto s = synthetic(4096, 40, [&](int t) { return std::exp(-0.3 * t) + floor; });
    const auto fit = fit_exponential(s, {0, 20});
    REQUIRE(fit.valid());
    CHECK(std::abs(fit.rate_or_exponent - 0.3) < 1e-3);
}

TEST_CASE("power-law fit on exact input")
{
    const auto s = synthetic(256, 120, [](int t) { return std::pow(1.0 + t, -2.0); });
    const auto fit = fit_power_law(s, {10, 100}, 0.0);
    REQUIRE(fit.valid());
    CHECK(fit.rate_or_exponent == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("model selection sanity")
{
    const auto s = synthetic(256, 60, [](int t) { return std::exp(-0.1 * t); });
    const auto e = fit_exponential(s, {1, 40}, 0.0);
    const auto p = fit_power_law(s, {1, 40}, 0.0);
    CHECK(p.r_squared < e.r_squared);
}

TEST_CASE("too few points or growth give no model")
{
    const auto s = synthetic(256, 10, [](int t) { return std::exp(-0.3 * t); });
    const auto short_fit = fit_exponential(s, {0, 3}, 0.0);
    CHECK(short_fit.model == DecayModel::none);
    CHECK_FALSE(short_fit.diagnostic.empty());

    const auto rising = synthetic(256, 10, [](int t) { return 0.1 + 0.01 * t; });
    const auto up = fit_exponential(rising, {0, 10}, 0.0);
    CHECK(up.model == DecayModel::none);
    CHECK(up.diagnostic.find("non-positive") != std::string::npos);

    // Everything at the floor is unusable.
    const auto flat = synthetic(64, 20, [](int) { return 2.0 / 64; });
    CHECK(fit_exponential(flat, {0, 20}).model == DecayModel::none);
}

TEST_CASE("fits are scale-equivariant")
{
    const auto a = synthetic(256, 80, [](int t) { return 0.7 * std::exp(-0.05 * t) + 0.2 * std::pow(1.0 + t, -1.5); });
    for (double c : {0.5, 3.0, 1e-3}) {
        auto b = a;
        for (auto& v : b.purity) v *= c;
        const auto fe1 = fit_exponential(a, {2, 60}, 0.0), fe2 = fit_exponential(b, {2, 60}, 0.0);
        const auto fp1 = fit_power_law(a, {2, 60}, 0.0), fp2 = fit_power_law(b, {2, 60}, 0.0);
        CHECK(std::abs(fe1.rate_or_exponent - fe2.rate_or_exponent) < 1e-10);
        CHECK(std::abs(fp1.rate_or_exponent - fp2.rate_or_exponent) < 1e-10);
        CHECK(std::abs((fe2.intercept - fe1.intercept) - std::log(c)) < 1e-10);
    }
}

TEST_CASE("prediction takes the smaller rate")
{
    ModelParams params;
    params.grid = GridSpec(256);
    params.range_zeta = 0.1;
    const double h = params.grid.h_eff();
    for (double gamma : {0.0, 1e-9, 1e-7, 1e-5, 1e-3}) {
        const auto p = predict_regimes(params, gamma, 1.6, 1.5, 0.02);
        CHECK(p.rate_golden_rule == doctest::Approx(2.0 * gamma / (h * h)));
        CHECK(p.rate_predicted == std::min(p.rate_golden_rule, p.rate_lyapunov));
        CHECK(p.rate_predicted <= p.rate_lyapunov);
        CHECK(p.rate_predicted <= p.rate_golden_rule);
        REQUIRE(p.tau_ehrenfest);
        CHECK(*p.tau_ehrenfest == doctest::Approx(std::log(5.0) / 1.6));
    }
    CHECK_FALSE(predict_regimes(params, 1e-5, 0.0, 0.0, 0.02).tau_ehrenfest);
    CHECK(predict_regimes(params, 1e-5, 1.0, 1.0, 0.02).saturation == 2.0 / 256);
}

TEST_CASE("regime report")
{
    ModelParams params;
    params.grid = GridSpec(128);
    const double floor = 2.0 / 128;

    SUBCASE("no entanglement")
    {
        auto s = synthetic(128, 50, [](int) { return 1.0; });
        s.params = params;
        const auto rep = select_regime(s, predict_regimes(params, 0.0, 1.6, 1.6, 0.02));
        CHECK(rep.status == RegimeStatus::no_entanglement);
        CHECK(std::string(to_string(rep.status)) == "no entanglement generation");
    }
    SUBCASE("chaotic decay then saturation")
    {
        auto s = synthetic(128, 200, [&](int t) { return (1.0 - floor) * std::exp(-0.2 * t) + floor; });
        s.params = params;
        const auto pred = predict_regimes(params, 1e-6, std::log(5.0), std::log(5.0), 0.02);
        const auto rep = select_regime(s, pred);
        REQUIRE(rep.first_passage);
        CHECK(rep.regime_ii->lo == static_cast<int>(std::ceil(*pred.tau_ehrenfest)) + 1);
        CHECK(rep.regime_ii->hi == *rep.first_passage - 1);
        CHECK(rep.selected == "exponential");
        CHECK(rep.exponential.rate_or_exponent == doctest::Approx(0.2).epsilon(1e-6));
        CHECK(rep.saturation_observed == doctest::Approx(floor).epsilon(1e-6));
        CHECK(rep.status == RegimeStatus::complete);
        CHECK(rep.predicted_over_fitted == doctest::Approx(pred.rate_predicted / 0.2));
    }
    SUBCASE("algebraic decay without an Ehrenfest time")
    {
        ModelParams big;
        big.grid = GridSpec(4096);
        const double f = 2.0 / 4096;
        auto s = synthetic(4096, 300, [&](int t) { return (1.0 - f) * std::pow(1.0 + t / 3.0, -2.0) + f; });
        s.params = big;
        const auto rep = select_regime(s, predict_regimes(big, 1e-6, 0.0, 0.0, 0.02));
        CHECK(rep.selected == "power_law");
        CHECK(rep.status == RegimeStatus::partial);
        REQUIRE(rep.regime_ii);
        CHECK(rep.regime_ii->hi >= 10 * rep.regime_ii->lo - 10);
    }
    SUBCASE("short series is reported as partial")
    {
        auto s = synthetic(128, 6, [](int t) { return std::exp(-0.02 * t); });
        s.params = params;
        const auto rep = select_regime(s, predict_regimes(params, 1e-6, 1.6, 1.6, 0.02));
        CHECK(rep.status == RegimeStatus::partial);
        CHECK_FALSE(rep.missing.empty());
    }
    SUBCASE("window override")
    {
        auto s = synthetic(128, 100, [](int t) { return std::exp(-0.03 * t); });
        s.params = params;
        RegimeOptions opt;
        opt.window_lo = 7;
        opt.window_hi = 33;
        const auto rep = select_regime(s, predict_regimes(params, 1e-6, 1.6, 1.6, 0.02), opt);
        CHECK(rep.exponential.window.lo == 7);
        CHECK(rep.exponential.window.hi == 33);
    }
}

TEST_CASE("ensemble mean and jackknife")
{
    ModelParams params;
    params.grid = GridSpec(64);
    std::vector<std::vector<double>> members;
    for (int i = 0; i < 8; ++i) {
        const double rate = 0.1 + 0.01 * (i - 3.5);
        std::vector<double> m;
        for (int t = 0; t <= 30; ++t) m.push_back(std::exp(-rate * t));
        members.push_back(m);
    }
    const auto s = make_series(members, params, 42);
    CHECK(s.ensemble_size == 8);
    CHECK(s.seed == 42);
    CHECK(s.purity[0] == 1.0);
    CHECK(s.purity_stderr[0] == 0.0);
    CHECK_NOTHROW(s.validate());
    const double se = jackknife_stderr(members, DecayModel::exponential, {1, 20}, 0.0);
    CHECK(se > 0.0);
    CHECK(se < 0.02);
    CHECK(jackknife_stderr({members[0]}, DecayModel::exponential, {1, 20}, 0.0) == 0.0);
}

TEST_CASE("random-state floor")
{
    const int n = 32;
    const double mc = random_state_mean_purity(n, 400, 7);
    const double exact = 2.0 * n / (n * n + 1.0);
    CHECK(std::abs(mc - exact) / exact < 0.02);
    CHECK(std::abs(saturation_estimate(GridSpec(n)) - mc) / mc < 0.02);
}
