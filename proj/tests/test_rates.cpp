#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "levyem/drift.hpp"
#include "levyem/rate_experiment.hpp"
#include "testutil.hpp"

using namespace levyem::rates;
using levyem::noise::Flavor;
using levyem::noise::LevyModel;
using levyem::sde::DriftSpec;
using levyem::sde::make_holder_drift;
using levyem::sde::make_linear_drift;
using levyem::sde::make_zero_drift;

namespace {

LevyModel stable_model(double alpha, int dim, Flavor flavor) {
    LevyModel m;
    m.alpha = alpha;
    m.dim = dim;
    m.flavor = flavor;
    return m;
}

}  // namespace

TEST_CASE("regime classification around the boundary") {
    CHECK(classify_regime(1.5, 1.0) == Regime::subcritical);
    CHECK(classify_regime(1.5, 1.5) == Regime::critical);
    CHECK(classify_regime(1.5, 1.5 + 1e-14) == Regime::critical);
    CHECK(classify_regime(1.5, 2.0) == Regime::supercritical);
    CHECK(to_string(Regime::critical) == "critical");
}

TEST_CASE("model decay values in the three regimes") {
    const auto sub = truncated_moment_rate(1.5, 1.0, 1024);
    CHECK(sub.second == Regime::subcritical);
    CHECK(sub.first == doctest::Approx(0.0098431332023036951).epsilon(1e-12));

    const auto crit = truncated_moment_rate(1.5, 1.5, 20);
    CHECK(crit.second == Regime::critical);
    CHECK(crit.first == doctest::Approx(std::log(20.0) / 20.0).epsilon(1e-15));

    const auto sup = truncated_moment_rate(1.5, 3.0, 100);
    CHECK(sup.second == Regime::supercritical);
    CHECK(sup.first == 0.01);

    CHECK_THROWS_AS((void)truncated_moment_rate(2.0, 1.0, 8), std::domain_error);
    CHECK_THROWS_AS((void)truncated_moment_rate(1.5, 0.0, 8), std::domain_error);
    CHECK_THROWS_AS((void)truncated_moment_rate(1.5, 1.0, 1), std::domain_error);
}

TEST_CASE("truncated moment estimator limits") {
    // p -> 0 makes min(1, |Z|^p) -> 1 almost surely
    const LevyModel m = stable_model(1.5, 1, Flavor::isotropic);
    const MomentEstimate tiny = empirical_truncated_moment(m, 1e-9, 16, 10000, 3);
    CHECK(std::abs(tiny.estimate - 1.0) < 1e-3);

    // gaussian driver: |Z_(1/n)|^2 has mean 2 d / n and the cap at 1 is
    // never reached at this n, so the CLT interval should cover 2 d / n
    for (int dim : {1, 2}) {
        LevyModel g;
        g.alpha = 2.0;
        g.dim = dim;
        g.flavor = Flavor::gaussian;
        const MomentEstimate est = empirical_truncated_moment(g, 2.0, 4096, 100000, 5);
        const double truth = 2.0 * dim / 4096.0;
        CHECK(est.ci_low <= truth);
        CHECK(est.ci_high >= truth);
    }

    CHECK_THROWS_AS((void)empirical_truncated_moment(m, 2.0, 16, 100, 1),
                    std::invalid_argument);
}

TEST_CASE("subcritical moment decay recovers p / alpha") {
    const LevyModel m = stable_model(1.5, 1, Flavor::isotropic);
    std::vector<std::pair<int, double>> pts;
    for (int k = 4; k <= 14; ++k) {
        const int n = 1 << k;
        pts.emplace_back(n, empirical_truncated_moment(m, 1.0, n, 100000, 11).estimate);
    }
    const FitResult fit = fit_rate(pts);
    CHECK(std::abs(fit.slope - 1.0 / 1.5) < 0.05);
}

TEST_CASE("decay fit on synthetic series") {
    // exact power law: slope recovered to rounding, interval collapses
    std::vector<std::pair<int, double>> pts;
    for (int n : {8, 16, 32, 64, 128, 256})
        pts.emplace_back(n, 3.2 * std::pow(n, -0.7));
    const FitResult exact = fit_rate(pts);
    CHECK(exact.slope == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(exact.slope_ci_high - exact.slope_ci_low < 1e-9);

    // n^(-1) log n: the fitted slope sits visibly below 1 on this window
    std::vector<std::pair<int, double>> crit;
    for (int k = 6; k <= 16; ++k) {
        const int n = 1 << k;
        crit.emplace_back(n, std::log(static_cast<double>(n)) / n);
    }
    const FitResult logfit = fit_rate(crit);
    CHECK(logfit.slope > 0.8);
    CHECK(logfit.slope < 0.95);

    CHECK_THROWS_AS((void)fit_rate({{8, 1.0}, {16, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_rate({{8, 1.0}, {16, 0.5}, {32, 0.0}}),
                    std::invalid_argument);
}

namespace {

ExperimentPlan mini_plan() {
    ExperimentPlan plan;
    plan.model = stable_model(1.5, 1, Flavor::isotropic);
    plan.drift = make_holder_drift(0.8, 1);
    plan.p = 2.0;
    plan.n_list = {8, 16, 32};
    plan.n_ref = 2048;
    plan.n_paths = 100;
    plan.master_seed = 77;
    plan.x0 = {0.0};
    return plan;
}

}  // namespace

TEST_CASE("strong-error report is independent of the thread count") {
    ExperimentPlan plan = mini_plan();
    plan.threads = 1;
    const std::string one = strong_error(plan).to_json().dump();
    plan.threads = 2;
    CHECK(strong_error(plan).to_json().dump() == one);
    plan.threads = 8;
    CHECK(strong_error(plan).to_json().dump() == one);
}

TEST_CASE("strong-error theory fields") {
    ExperimentPlan plan = mini_plan();
    plan.n_paths = 2;
    plan.n_list = {8};
    plan.n_ref = 512;
    const RateReport sup = strong_error(plan);
    CHECK(sup.theory_slope == doctest::Approx(1.0));  // q = p beta = 1.6 > alpha
    CHECK(sup.regime == Regime::supercritical);
    CHECK_FALSE(sup.critical_log_factor);

    plan.p = 0.5;  // q = 0.4 < alpha
    const RateReport sub = strong_error(plan);
    CHECK(sub.theory_slope == doctest::Approx(0.5 * 0.8 / 1.5).epsilon(1e-12));
    CHECK(sub.regime == Regime::subcritical);
    CHECK(sub.per_n.at(0).theory_value ==
          doctest::Approx(std::pow(8.0, -0.5 * 0.8 / 1.5)).epsilon(1e-12));
}

TEST_CASE("zero drift couples schemes to the reference exactly") {
    ExperimentPlan plan = mini_plan();
    plan.drift = make_zero_drift(1);
    plan.n_paths = 20;
    const RateReport report = strong_error(plan);
    CHECK(report.exact_zero);
    for (const auto& pt : report.per_n) {
        CHECK(pt.estimate == 0.0);
        CHECK(pt.ci_low == 0.0);
        CHECK(pt.ci_high == 0.0);
    }
    CHECK(report.fitted_slope == 0.0);
}

TEST_CASE("an initial offset floors the error at its p-th power") {
    ExperimentPlan plan = mini_plan();
    plan.model = stable_model(2.0, 1, Flavor::gaussian);
    plan.drift = make_zero_drift(1);
    plan.n_paths = 50;
    plan.x0_perturbation = 0.1;
    const RateReport report = strong_error(plan);
    CHECK_FALSE(report.exact_zero);
    for (const auto& pt : report.per_n)
        CHECK(pt.estimate == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("runaway paths raise instead of polluting the estimate") {
    ExperimentPlan plan = mini_plan();
    plan.drift = make_linear_drift(1e200, 1);
    plan.x0 = {1.0};
    plan.n_list = {8};
    plan.n_ref = 512;
    plan.n_paths = 2;
    plan.threads = 1;
    try {
        (void)strong_error(plan);
        FAIL("expected a runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("path") != std::string::npos);
    }
}

TEST_CASE("plan validation") {
    ExperimentPlan plan = mini_plan();
    plan.n_list = {8, 24};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = mini_plan();
    plan.n_ref = 1024;  // 32 * 64 > 1024
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = mini_plan();
    plan.x0 = {0.0, 0.0};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = mini_plan();
    plan.drift = make_zero_drift(3);
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan = mini_plan();
    plan.p = 0.0;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("monotonicity gate tolerates noise but flags real increases") {
    RateReport report;
    auto add = [&report](int n, double est, double half) {
        RatePoint pt;
        pt.n = n;
        pt.estimate = est;
        pt.ci_low = est - half;
        pt.ci_high = est + half;
        report.per_n.push_back(pt);
    };
    add(8, 0.10, 0.01);
    add(16, 0.101, 0.01);  // within combined noise
    add(32, 0.05, 0.01);
    CHECK(monotone_within_noise(report));

    report.per_n.clear();
    add(8, 0.10, 0.01);
    add(16, 0.20, 0.01);  // far beyond three combined standard errors
    CHECK_FALSE(monotone_within_noise(report));
}

TEST_CASE("report serialization carries the full per-n table") {
    ExperimentPlan plan = mini_plan();
    plan.n_paths = 10;
    const RateReport report = strong_error(plan);
    const auto j = report.to_json();
    CHECK(j.at("per_n").size() == 3);
    CHECK(j.at("per_n").at(0).at("n") == 8);
    CHECK(j.at("regime") == "supercritical");
    CHECK(j.contains("slope_ci"));

    std::ostringstream csv;
    report.write_csv(csv);
    CHECK(csv.str().rfind("n,estimate,ci_low,ci_high,theory_value\n", 0) == 0);
    // one header plus one row per n
    int lines = 0;
    for (char c : csv.str())
        if (c == '\n') ++lines;
    CHECK(lines == 4);
}
