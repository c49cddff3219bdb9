#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace levyem::stats {

// Pairwise (tree) summation, deterministic for a fixed input order and much
// better conditioned than sequential accumulation.
double pairwise_sum(std::span<const double> x);

inline double mean(std::span<const double> x) {
    return x.empty() ? 0.0 : pairwise_sum(x) / static_cast<double>(x.size());
}

// Percentile bootstrap for the mean of x: resamples paths with replacement,
// deterministic for a fixed (seed, stream) pair. Returns {lo, hi} at the
// given two-sided level (0.95 -> 2.5% / 97.5% quantiles).
struct BootstrapCI {
    double lo = 0.0;
    double hi = 0.0;
};
BootstrapCI bootstrap_mean_ci(std::span<const double> x, int resamples,
                              double level, std::uint64_t seed,
                              std::uint64_t stream);

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};
OlsFit ols(std::span<const double> x, std::span<const double> y);

// Empirical quantile with linear interpolation on the sorted copy.
double quantile(std::vector<double> values, double q);

}  // namespace levyem::stats
