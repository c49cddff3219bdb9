#include "levyem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levyem/philox.hpp"

namespace levyem::stats {

namespace {
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}
}  // namespace

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

BootstrapCI bootstrap_mean_ci(std::span<const double> x, int resamples,
                              double level, std::uint64_t seed,
                              std::uint64_t stream) {
    if (x.empty() || resamples < 1)
        throw std::invalid_argument("bootstrap_mean_ci: empty sample or no resamples");
    noise::PhiloxRng rng(seed, stream);
    const std::uint64_t n = x.size();
    std::vector<double> means(resamples);
    std::vector<double> draw(x.size());
    for (int b = 0; b < resamples; ++b) {
        for (std::size_t i = 0; i < x.size(); ++i) draw[i] = x[rng.uniform_below(n)];
        means[b] = mean(draw);
    }
    std::sort(means.begin(), means.end());
    const double tail = (1.0 - level) / 2.0;
    BootstrapCI ci;
    ci.lo = quantile_sorted(means, tail);
    ci.hi = quantile_sorted(means, 1.0 - tail);
    return ci;
}

OlsFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols: need at least two matched points");
    const double xbar = mean(x);
    const double ybar = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols: degenerate abscissae");
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    fit.residuals.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    return fit;
}

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, q);
}

}  // namespace levyem::stats
