#include "qent/classical.hpp"

#include "qent/parallel.hpp"
#include "qent/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qent {

using std::numbers::pi;

double wrap_position(double q) { return q - std::floor(q); }

double wrap_momentum(double p) { return p - std::floor(p + 0.5); }

namespace {

double wrapped_difference(double delta) { return delta - std::floor(delta + 0.5); }

struct Forces {
    double f1, f2;              // momentum kicks
    double a11, a12, a21, a22;  // d(kick_i)/d(q_j)
};

Forces forces(double q1, double q2, const ModelParams& par)
{
    const double k = par.kick_K;
    const double eps = par.coupling_eps;
    const GaussianInteraction g{par.range_zeta};
    const double d = q1 - q2;
    const double grad = eps == 0.0 ? 0.0 : eps * g.gradient(d);
    const double curv = eps == 0.0 ? 0.0 : eps * g.curvature(d);
    Forces f{};
    f.f1 = k / (2.0 * pi) * std::sin(2.0 * pi * q1) - grad;
    f.f2 = k / (2.0 * pi) * std::sin(2.0 * pi * q2) + grad;
    f.a11 = k * std::cos(2.0 * pi * q1) - curv;
    f.a12 = curv;
    f.a21 = curv;
    f.a22 = k * std::cos(2.0 * pi * q2) - curv;
    return f;
}

Eigen::Matrix4d jacobian_from(const Forces& f)
{
    // rows/cols: q1, p1, q2, p2
    Eigen::Matrix4d j;
    j << 1.0 + f.a11, 1.0, f.a12, 0.0,
         f.a11,       1.0, f.a12, 0.0,
         f.a21,       0.0, 1.0 + f.a22, 1.0,
         f.a21,       0.0, f.a22,       1.0;
    return j;
}

void advance(double& q1, double& p1, double& q2, double& p2, const Forces& f)
{
    p1 = wrap_momentum(p1 + f.f1);
    p2 = wrap_momentum(p2 + f.f2);
    q1 = wrap_position(q1 + p1);
    q2 = wrap_position(q2 + p2);
}

}  // namespace

double GaussianInteraction::value(double delta) const
{
    const double w = wrapped_difference(delta);
    return std::exp(-w * w / (2.0 * zeta * zeta));
}

double GaussianInteraction::gradient(double delta) const
{
    const double w = wrapped_difference(delta);
    return -w / (zeta * zeta) * value(delta);
}

double GaussianInteraction::curvature(double delta) const
{
    const double w = wrapped_difference(delta);
    const double z2 = zeta * zeta;
    return (w * w / (z2 * z2) - 1.0 / z2) * value(delta);
}

Eigen::Matrix4d step_jacobian(const PhasePoint& pt, const ModelParams& params)
{
    return jacobian_from(forces(pt.q1, pt.q2, params));
}

PhasePoint classical_step(const PhasePoint& pt, const ModelParams& params)
{
    const Forces f = forces(pt.q1, pt.q2, params);
    PhasePoint out = pt;
    advance(out.q1, out.p1, out.q2, out.p2, f);
    out.tangent = jacobian_from(f) * pt.tangent;
    return out;
}

namespace {

struct TrajLyap {
    double l1 = 0.0;
    double l2 = 0.0;
};

// One-particle standard-map exponent along the trajectory (q, p).
double one_particle_exponent(double q, double p, double k, int n_steps)
{
    double vq = 1.0, vp = 0.0, acc = 0.0;
    for (int t = 0; t < n_steps; ++t) {
        const double a = k * std::cos(2.0 * pi * q);
        p = wrap_momentum(p + k / (2.0 * pi) * std::sin(2.0 * pi * q));
        q = wrap_position(q + p);
        const double np = vp + a * vq;
        const double nq = vq + np;
        const double len = std::hypot(nq, np);
        acc += std::log(len);
        vq = nq / len;
        vp = np / len;
    }
    return acc / n_steps;
}

TrajLyap coupled_exponents(PhasePoint pt, const ModelParams& par, int n_steps)
{
    Eigen::Vector4d v1(1.0, 0.0, 0.0, 0.0);
    Eigen::Vector4d v2(0.0, 0.0, 1.0, 0.0);
    double s1 = 0.0, s2 = 0.0;
    for (int t = 0; t < n_steps; ++t) {
        const Forces f = forces(pt.q1, pt.q2, par);
        const Eigen::Matrix4d j = jacobian_from(f);
        advance(pt.q1, pt.p1, pt.q2, pt.p2, f);
        v1 = j * v1;
        v2 = j * v2;
        const double n1 = v1.norm();
        v1 /= n1;
        v2 -= v1.dot(v2) * v1;
        const double n2 = v2.norm();
        v2 /= n2;
        s1 += std::log(n1);
        s2 += std::log(n2);
    }
    return {s1 / n_steps, s2 / n_steps};
}

void mean_stderr(const std::vector<double>& xs, double& mean, double& se)
{
    const double n = static_cast<double>(xs.size());
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
    se = std::sqrt(var / n);
}

PhasePoint uniform_point(Rng& rng)
{
    PhasePoint pt;
    pt.q1 = rng.uniform();
    pt.p1 = rng.uniform() - 0.5;
    pt.q2 = rng.uniform();
    pt.p2 = rng.uniform() - 0.5;
    return pt;
}

}  // namespace

LyapunovEstimate lyapunov(const ModelParams& params, int n_traj, int n_steps, std::uint64_t seed)
{
    if (n_steps < 1000) throw std::invalid_argument("lyapunov: n_steps must be >= 1000");
    if (n_traj < 10) throw std::invalid_argument("lyapunov: n_traj must be >= 10");
    params.validate();

    std::vector<PhasePoint> starts;
    Rng rng(seed);
    for (int i = 0; i < n_traj; ++i) starts.push_back(uniform_point(rng));

    LyapunovEstimate est;
    est.n_traj = n_traj;
    est.n_steps = n_steps;
    est.seed = seed;

    if (params.coupling_eps == 0.0) {
        std::vector<double> a(n_traj), b(n_traj);
        parallel_for(n_traj, default_workers(), [&](std::size_t i) {
            a[i] = one_particle_exponent(starts[i].q1, starts[i].p1, params.kick_K, n_steps);
            b[i] = one_particle_exponent(starts[i].q2, starts[i].p2, params.kick_K, n_steps);
        });
        double sa = 0.0, sb = 0.0;
        mean_stderr(a, est.lambda_particle1, sa);
        mean_stderr(b, est.lambda_particle2, sb);
        std::vector<double> pooled(a);
        pooled.insert(pooled.end(), b.begin(), b.end());
        double m = 0.0, se = 0.0;
        mean_stderr(pooled, m, se);
        est.lambda1 = est.lambda2 = m;
        est.stderr = est.stderr2 = se;
    } else {
        std::vector<TrajLyap> per(n_traj);
        parallel_for(n_traj, default_workers(),
                     [&](std::size_t i) { per[i] = coupled_exponents(starts[i], params, n_steps); });
        std::vector<double> l1(n_traj), l2(n_traj);
        for (int i = 0; i < n_traj; ++i) {
            l1[i] = per[i].l1;
            l2[i] = per[i].l2;
        }
        mean_stderr(l1, est.lambda1, est.stderr);
        mean_stderr(l2, est.lambda2, est.stderr2);
        est.lambda_particle1 = est.lambda_particle2 = std::nan("");
    }
    est.converged = std::abs(est.lambda1) > 0.0 && est.stderr / std::abs(est.lambda1) <= 0.2;
    return est;
}

CorrelatorEstimate interaction_correlator(const ModelParams& params, CorrelatorObservable obs,
                                          const CorrelatorOptions& opt)
{
    params.validate();
    if (opt.n_traj < 2) throw std::invalid_argument("correlator: n_traj must be >= 2");
    if (opt.n_max_lag < 0 || opt.n_max_lag >= opt.n_steps) {
        throw std::invalid_argument("correlator: need 0 <= n_max_lag < n_steps");
    }

    ModelParams free_dyn = params;
    free_dyn.coupling_eps = 0.0;
    const GaussianInteraction g{params.range_zeta};
    const double eps = params.coupling_eps;
    const int nt = opt.n_traj;
    const int ns = opt.n_steps;
    const int lags = opt.n_max_lag;

    std::vector<PhasePoint> starts;
    Rng rng(opt.seed);
    for (int i = 0; i < nt; ++i) starts.push_back(uniform_point(rng));

    auto observe = [&](double qa, double qb) {
        switch (obs) {
        case CorrelatorObservable::interaction:
            return eps * g.value(qa - qb);
        case CorrelatorObservable::gradient_first:
            return eps * g.gradient(qa - qb);
        case CorrelatorObservable::gradient_second:
            return -eps * g.gradient(qa - qb);
        }
        return 0.0;
    };

    std::vector<std::vector<double>> series(nt, std::vector<double>(ns));
    parallel_for(nt, opt.workers, [&](std::size_t i) {
        PhasePoint pt = starts[i];
        if (opt.swap_roles) {
            std::swap(pt.q1, pt.q2);
            std::swap(pt.p1, pt.p2);
        }
        auto& s = series[i];
        for (int t = 0; t < ns; ++t) {
            s[t] = observe(pt.q1, pt.q2);
            const Forces f = forces(pt.q1, pt.q2, free_dyn);
            advance(pt.q1, pt.p1, pt.q2, pt.p2, f);
        }
    });

    // Ensemble mean over all samples; summed per trajectory then in index order.
    std::vector<double> traj_sum(nt);
    for (int i = 0; i < nt; ++i) {
        double acc = 0.0;
        for (double v : series[i]) acc += v;
        traj_sum[i] = acc;
    }
    double mean = 0.0;
    for (double v : traj_sum) mean += v;
    mean /= static_cast<double>(nt) * ns;

    std::vector<std::vector<double>> c(nt, std::vector<double>(lags + 1));
    parallel_for(nt, opt.workers, [&](std::size_t i) {
        const auto& s = series[i];
        for (int n = 0; n <= lags; ++n) {
            double acc = 0.0;
            for (int t = 0; t + n < ns; ++t) acc += (s[t] - mean) * (s[t + n] - mean);
            c[i][n] = acc / (ns - n);
        }
    });

    CorrelatorEstimate est;
    est.n_traj = nt;
    est.n_steps = ns;
    est.seed = opt.seed;
    est.correlation_curve.assign(lags + 1, 0.0);
    est.curve_stderr.assign(lags + 1, 0.0);
    for (int n = 0; n <= lags; ++n) {
        std::vector<double> col(nt);
        for (int i = 0; i < nt; ++i) col[i] = c[i][n];
        mean_stderr(col, est.correlation_curve[n], est.curve_stderr[n]);
    }
    std::vector<double> per_traj(nt);
    for (int i = 0; i < nt; ++i) {
        double gsum = c[i][0];
        for (int n = 1; n <= lags; ++n) gsum += 2.0 * c[i][n];
        per_traj[i] = gsum;
    }
    double gmean = 0.0;
    mean_stderr(per_traj, gmean, est.stderr);
    est.gamma_big = gmean;
    if (lags > 0 && std::abs(est.correlation_curve[lags]) > 3.0 * est.curve_stderr[lags]) {
        est.warnings.push_back("correlation not decayed within the lag window (|C(n_max)| > 3 stderr)");
    }
    return est;
}

CorrelatorEstimate correlator_gamma_big(const ModelParams& params, int n_traj, int n_steps, int n_max_lag,
                                        std::uint64_t seed)
{
    CorrelatorOptions opt;
    opt.n_traj = n_traj;
    opt.n_steps = n_steps;
    opt.n_max_lag = n_max_lag;
    opt.seed = seed;
    opt.workers = default_workers();
    return interaction_correlator(params, CorrelatorObservable::interaction, opt);
}

CorrelatorEstimate correlator_gamma_small(const ModelParams& params, int n_traj, int n_steps, int n_max_lag,
                                          std::uint64_t seed)
{
    CorrelatorOptions opt;
    opt.n_traj = n_traj;
    opt.n_steps = n_steps;
    opt.n_max_lag = n_max_lag;
    opt.seed = seed;
    opt.workers = default_workers();
    return interaction_correlator(params, CorrelatorObservable::gradient_first, opt);
}

double ehrenfest_time(double lambda1, double zeta, double sigma)
{
    if (!(zeta > sigma)) throw std::domain_error("ehrenfest_time: zeta must exceed sigma");
    if (!(lambda1 > 0.0)) throw std::domain_error("ehrenfest_time: needs a positive Lyapunov exponent");
    return std::log(zeta / sigma) / lambda1;
}

}  // namespace qent
