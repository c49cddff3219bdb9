#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "levyem/drift.hpp"
#include "levyem/levy_model.hpp"

namespace levyem::rates {

// Position of the moment exponent q relative to alpha: the decay of
// E min(1, |Z_{1/n}|^q) switches from n^(-q/alpha) through n^(-1) log n to
// n^(-1) as q crosses alpha. For the strong-error experiment q = p * beta,
// so the boundary sits at p = alpha / beta.
enum class Regime { subcritical, critical, supercritical };

std::string to_string(Regime r);

Regime classify_regime(double alpha, double q);

// One coupled strong-error study: common noise at resolution n_ref, Euler
// schemes at every n in n_list plus the n_ref reference, p-th moment of the
// pathwise sup distance. x0_perturbation shifts the schemes' first
// coordinate away from the reference start, exposing the initial-condition
// term of the error bound; 0 means exact coupling at t = 0.
struct ExperimentPlan {
    noise::LevyModel model;
    sde::DriftSpec drift;
    double p = 2.0;
    std::vector<int> n_list = {8, 16, 32, 64, 128, 256, 512};
    int n_ref = 1 << 15;
    int n_paths = 10000;
    std::uint64_t master_seed = 0;
    std::vector<double> x0 = {0.0};
    double x0_perturbation = 0.0;
    int threads = 0;

    void validate() const;
};

struct RatePoint {
    int n = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double theory_value = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_ci_low = 0.0;
    double slope_ci_high = 0.0;
};

struct RateReport {
    std::vector<RatePoint> per_n;
    double fitted_slope = 0.0;
    double slope_ci_low = 0.0;
    double slope_ci_high = 0.0;
    double theory_slope = 0.0;
    Regime regime = Regime::subcritical;
    // the critical row decays like n^(-1) log n; a fitted slope cannot
    // resolve the log factor, so reports carry an explicit flag
    bool critical_log_factor = false;
    bool exact_zero = false;
    double p = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    nlohmann::json to_json() const;
    void write_csv(std::ostream& os) const;
};

RateReport strong_error(const ExperimentPlan& plan);

// Model decay value of E min(1, |Z_{1/n}|^p) for a unit-scale alpha-stable
// driver: n^(-p/alpha) below alpha, log(n)/n at alpha, 1/n above.
std::pair<double, Regime> truncated_moment_rate(double alpha, double p, int n);

struct MomentEstimate {
    int n = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Monte Carlo E min(1, |Z_{1/n}|^p), Z_{1/n} = n^(-1/alpha) Z_1. Calls
// sharing a seed reuse the same unit variates across n, so a family of
// estimates over an n grid is coupled by common random numbers.
MomentEstimate empirical_truncated_moment(const noise::LevyModel& model,
                                          double p, int n, int samples,
                                          std::uint64_t seed);

// Log-log decay fit: slope of log(value) against log(1/n), so a positive
// slope is a decay exponent. CI by residual bootstrap with a fixed
// internal stream; deterministic for a fixed input.
FitResult fit_rate(const std::vector<std::pair<int, double>>& points);

// Estimates must not increase with n beyond combined bootstrap noise;
// z_limit is the allowed number of combined standard errors.
bool monotone_within_noise(const RateReport& report, double z_limit = 3.0);

}  // namespace levyem::rates
