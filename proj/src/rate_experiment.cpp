#include "levyem/rate_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "levyem/parallel.hpp"
#include "levyem/philox.hpp"
#include "levyem/stats.hpp"

namespace levyem::rates {

namespace {

constexpr double kCriticalTol = 1e-12;

// Model decay curve shared by the report's theory column: same three-regime
// shape as truncated_moment_rate but valid for any slope in (0, 1].
double theory_curve(double slope, bool critical, int n) {
    const double base = std::pow(static_cast<double>(n), -slope);
    return critical ? base * std::log(static_cast<double>(n)) : base;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical: return "supercritical";
    }
    return "unknown";
}

Regime classify_regime(double alpha, double q) {
    if (std::abs(q - alpha) < kCriticalTol) return Regime::critical;
    return q < alpha ? Regime::subcritical : Regime::supercritical;
}

void ExperimentPlan::validate() const {
    model.validate();
    if (!(p > 0.0)) throw std::invalid_argument("plan: p must be positive");
    if (n_list.empty()) throw std::invalid_argument("plan: n_list is empty");
    if (n_paths < 1) throw std::invalid_argument("plan: n_paths must be >= 1");
    if (!noise::is_power_of_two(n_ref))
        throw std::invalid_argument("plan: n_ref must be a power of two");
    int n_max = 0;
    for (int n : n_list) {
        if (n < 1 || !noise::is_power_of_two(n))
            throw std::invalid_argument("plan: every n must be a power of two");
        if (n_ref % n != 0)
            throw std::invalid_argument("plan: every n must divide n_ref");
        n_max = std::max(n_max, n);
    }
    // the reference must sit well below the coarsest tested step size,
    // otherwise it stops being a stand-in for the exact solution
    if (static_cast<long long>(n_max) * 64 > n_ref)
        throw std::invalid_argument("plan: need max(n_list) * 64 <= n_ref");
    if (static_cast<int>(x0.size()) != model.dim)
        throw std::invalid_argument("plan: x0 dimension mismatch");
    if (drift.dim != model.dim)
        throw std::invalid_argument("plan: drift dimension mismatch");
}

RateReport strong_error(const ExperimentPlan& plan) {
    plan.validate();
    const int d = plan.model.dim;
    const int n_schemes = static_cast<int>(plan.n_list.size());
    const double dt = 1.0 / plan.n_ref;

    std::vector<int> strides(n_schemes);
    for (int s = 0; s < n_schemes; ++s) strides[s] = plan.n_ref / plan.n_list[s];

    std::vector<double> x0_scheme = plan.x0;
    x0_scheme[0] += plan.x0_perturbation;

    // per-path p-th power of the sup distance, one row per path so any
    // parallel schedule fills the same slots
    std::vector<double> errors(static_cast<std::size_t>(plan.n_paths) * n_schemes);

    parallel_for(plan.n_paths, plan.threads, [&](long long path) {
        const noise::IncrementGrid grid = noise::sample_increments(
            plan.model, plan.n_ref, plan.master_seed,
            static_cast<std::uint64_t>(path));

        std::vector<double> ref = plan.x0;
        std::vector<double> ref_drift(d);
        std::vector<double> st(static_cast<std::size_t>(n_schemes) * d);
        std::vector<double> frozen(st.size());
        for (int s = 0; s < n_schemes; ++s)
            for (int i = 0; i < d; ++i) st[static_cast<std::size_t>(s) * d + i] = x0_scheme[i];

        const double init_gap2 = plan.x0_perturbation * plan.x0_perturbation;
        std::vector<double> sup2(n_schemes, init_gap2);

        for (int k = 0; k < plan.n_ref; ++k) {
            plan.drift(ref, ref_drift);
            for (int s = 0; s < n_schemes; ++s) {
                double* xs = st.data() + static_cast<std::size_t>(s) * d;
                double* fs = frozen.data() + static_cast<std::size_t>(s) * d;
                if (k % strides[s] == 0)
                    plan.drift({xs, static_cast<std::size_t>(d)},
                               {fs, static_cast<std::size_t>(d)});
            }
            const auto dz = grid.step(k);
            for (int i = 0; i < d; ++i) ref[i] += ref_drift[i] * dt + dz[i];
            for (int s = 0; s < n_schemes; ++s) {
                double* xs = st.data() + static_cast<std::size_t>(s) * d;
                const double* fs = frozen.data() + static_cast<std::size_t>(s) * d;
                double gap2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    xs[i] += fs[i] * dt + dz[i];
                    const double g = xs[i] - ref[i];
                    gap2 += g * g;
                }
                if (gap2 > sup2[s]) sup2[s] = gap2;
            }
        }

        for (int s = 0; s < n_schemes; ++s) {
            const double value = std::pow(std::sqrt(sup2[s]), plan.p);
            if (!std::isfinite(value))
                throw std::runtime_error(
                    "strong_error: non-finite error in path " +
                    std::to_string(path) + " at n = " +
                    std::to_string(plan.n_list[s]));
            errors[static_cast<std::size_t>(path) * n_schemes + s] = value;
        }
    });

    const double q = plan.p * plan.drift.beta;
    RateReport report;
    report.p = plan.p;
    report.alpha = plan.model.alpha;
    report.beta = plan.drift.beta;
    report.regime = classify_regime(plan.model.alpha, q);
    report.critical_log_factor = report.regime == Regime::critical;
    report.theory_slope = std::min(q / plan.model.alpha, 1.0);

    bool all_zero = true;
    std::vector<double> column(plan.n_paths);
    for (int s = 0; s < n_schemes; ++s) {
        for (int path = 0; path < plan.n_paths; ++path)
            column[path] = errors[static_cast<std::size_t>(path) * n_schemes + s];
        RatePoint pt;
        pt.n = plan.n_list[s];
        pt.estimate = stats::mean(column);
        const auto ci = stats::bootstrap_mean_ci(
            column, 1000, 0.95, plan.master_seed,
            noise::kStreamBootstrap ^ (static_cast<std::uint64_t>(s + 1) << 32));
        pt.ci_low = ci.lo;
        pt.ci_high = ci.hi;
        pt.theory_value = theory_curve(report.theory_slope,
                                       report.critical_log_factor, pt.n);
        if (pt.estimate != 0.0) all_zero = false;
        report.per_n.push_back(pt);
    }
    report.exact_zero = all_zero;

    if (!report.exact_zero && report.per_n.size() >= 3) {
        std::vector<std::pair<int, double>> pts;
        for (const auto& pt : report.per_n) pts.emplace_back(pt.n, pt.estimate);
        const FitResult fit = fit_rate(pts);
        report.fitted_slope = fit.slope;
        report.slope_ci_low = fit.slope_ci_low;
        report.slope_ci_high = fit.slope_ci_high;
    }
    return report;
}

std::pair<double, Regime> truncated_moment_rate(double alpha, double p, int n) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("truncated_moment_rate: alpha must be in (0, 2)");
    if (!(p > 0.0)) throw std::domain_error("truncated_moment_rate: p must be > 0");
    if (n < 2) throw std::domain_error("truncated_moment_rate: n must be >= 2");
    const Regime regime = classify_regime(alpha, p);
    const double nd = static_cast<double>(n);
    double value = 0.0;
    switch (regime) {
        case Regime::subcritical: value = std::pow(nd, -p / alpha); break;
        case Regime::critical: value = std::log(nd) / nd; break;
        case Regime::supercritical: value = 1.0 / nd; break;
    }
    return {value, regime};
}

MomentEstimate empirical_truncated_moment(const noise::LevyModel& model,
                                          double p, int n, int samples,
                                          std::uint64_t seed) {
    model.validate();
    if (!(p > 0.0))
        throw std::invalid_argument("empirical_truncated_moment: p must be > 0");
    if (n < 1 || samples < 10000)
        throw std::invalid_argument(
            "empirical_truncated_moment: need n >= 1 and samples >= 10^4");

    noise::PhiloxRng rng(seed, noise::kStreamMoments);
    const double root = std::pow(1.0 / n, 1.0 / model.alpha);
    std::vector<double> z(model.dim);
    std::vector<double> values(samples);
    for (int i = 0; i < samples; ++i) {
        noise::sample_unit_variate(model, rng, z);
        double norm2 = 0.0;
        for (double c : z) norm2 += root * c * root * c;
        values[i] = std::min(1.0, std::pow(std::sqrt(norm2), p));
    }

    MomentEstimate est;
    est.n = n;
    est.estimate = stats::mean(values);
    // statistic lies in [0, 1], so the CLT interval is reliable
    double var = 0.0;
    for (double v : values) var += (v - est.estimate) * (v - est.estimate);
    var /= samples > 1 ? samples - 1 : 1;
    const double half = 1.959964 * std::sqrt(var / samples);
    est.ci_low = est.estimate - half;
    est.ci_high = est.estimate + half;
    return est;
}

FitResult fit_rate(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_rate: need at least three points");
    std::vector<double> x, y;
    for (const auto& [n, value] : points) {
        if (!(value > 0.0))
            throw std::invalid_argument(
                "fit_rate: values must be positive (exact-zero series are "
                "reported separately)");
        x.push_back(std::log(1.0 / n));
        y.push_back(std::log(value));
    }
    const stats::OlsFit base = stats::ols(x, y);

    // residual bootstrap around the fitted line, fixed stream so the CI is
    // a pure function of the input points
    noise::PhiloxRng rng(0, noise::kStreamFitRate);
    const int B = 1000;
    const std::size_t m = x.size();
    std::vector<double> yb(m), slopes(B);
    for (int b = 0; b < B; ++b) {
        for (std::size_t i = 0; i < m; ++i) {
            const double fit_i = base.intercept + base.slope * x[i];
            yb[i] = fit_i + base.residuals[rng.uniform_below(m)];
        }
        slopes[b] = stats::ols(x, yb).slope;
    }
    FitResult out;
    out.slope = base.slope;
    out.intercept = base.intercept;
    out.slope_ci_low = stats::quantile(slopes, 0.025);
    out.slope_ci_high = stats::quantile(slopes, 0.975);
    return out;
}

bool monotone_within_noise(const RateReport& report, double z_limit) {
    // percentile CIs at 95%: half-width ~ 1.96 standard errors
    constexpr double kZ95 = 1.959964;
    for (std::size_t i = 1; i < report.per_n.size(); ++i) {
        const auto& coarse = report.per_n[i - 1];
        const auto& fine = report.per_n[i];
        const double se_c = (coarse.ci_high - coarse.ci_low) / (2.0 * kZ95);
        const double se_f = (fine.ci_high - fine.ci_low) / (2.0 * kZ95);
        const double se = std::sqrt(se_c * se_c + se_f * se_f);
        if (fine.estimate > coarse.estimate + z_limit * se) return false;
    }
    return true;
}

nlohmann::json RateReport::to_json() const {
    nlohmann::json j;
    j["per_n"] = nlohmann::json::array();
    for (const auto& pt : per_n) {
        j["per_n"].push_back({{"n", pt.n},
                              {"estimate", pt.estimate},
                              {"ci_low", pt.ci_low},
                              {"ci_high", pt.ci_high},
                              {"theory_value", pt.theory_value}});
    }
    j["fitted_slope"] = fitted_slope;
    j["slope_ci"] = {slope_ci_low, slope_ci_high};
    j["theory_slope"] = theory_slope;
    j["regime"] = to_string(regime);
    j["critical_log_factor"] = critical_log_factor;
    j["exact_zero"] = exact_zero;
    j["p"] = p;
    j["alpha"] = alpha;
    j["beta"] = beta;
    return j;
}

void RateReport::write_csv(std::ostream& os) const {
    os << "n,estimate,ci_low,ci_high,theory_value\n";
    char line[256];
    for (const auto& pt : per_n) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g\n", pt.n,
                      pt.estimate, pt.ci_low, pt.ci_high, pt.theory_value);
        os << line;
    }
}

}  // namespace levyem::rates
