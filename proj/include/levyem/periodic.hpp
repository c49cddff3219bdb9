#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace levyem::spectral {

// Real function sampled on a uniform grid of the torus of circumference
// 2*pi*L. All norms and integrals below are grid quadrature sums; band
// limited inputs make them exact up to rounding.
struct PeriodicFunction {
    std::vector<double> samples;
    double L = 16.0;

    int grid_size() const { return static_cast<int>(samples.size()); }
    double dx() const;
    // largest representable frequency |xi| = N / (2 L)
    double nyquist() const;
    void validate() const;
};

// Radial low-pass cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 1, glued by the
// exp(-1/t) smooth step; infinitely differentiable and nonincreasing in
// |xi|. The annulus bump is phi(xi) = chi(xi) - chi(2 xi), supported in
// 3/8 <= |xi| <= 1, and chi(2 xi) + sum_{j >= 0} phi(2^-j xi) = 1.
double chi(double xi);
double phi(double xi);

struct DyadicBlock {
    int j = -1;
    PeriodicFunction f;
};

// Frequency-localized piece of f: coefficients multiplied by chi(2 xi) for
// j = -1, by phi(2^-j xi) for j >= 0. Block j >= 0 lives in the annulus
// 2^j * [3/8, 1].
DyadicBlock dyadic_block(const PeriodicFunction& f, int j);

// Largest j whose annulus intersects [0, nyquist]; blocks beyond it vanish
// identically on the grid.
int max_block_index(const PeriodicFunction& f);

// Grid L^p norm, p in [1, inf] (inf -> max abs sample).
double lp_norm(const PeriodicFunction& f, double p);

// (sum_j 2^(j s p) ||block_j||_p^p)^(1/p), sup over j when p = inf, blocks
// j = -1 .. max_block_index.
double besov_norm(const PeriodicFunction& f, double s, double p);

// Fourier multiplier |xi|^order, order in (0, 2].
PeriodicFunction frac_laplacian(const PeriodicFunction& f, double order);

enum class CheckStatus { pass, fail, inconclusive };

std::string to_string(CheckStatus s);

struct BlockRatio {
    int j = 0;
    double ratio = 0.0;
    double block_norm = 0.0;
};

struct CheckResult {
    CheckStatus status = CheckStatus::inconclusive;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<BlockRatio> per_j;
    nlohmann::json to_json() const;
};

// For each block j in [j_lo, j_hi] with ||block||_p above 1e-10, forms the
// rectified envelope h = |block|^(p/2) and the ratio
//   integral |(-Laplace)^(alpha/4) h|^2 dx  /  (2^(alpha j) ||block||_p^p).
// Lower-bounded ratios mean frequency localization produces dissipation at
// the expected 2^(alpha j) scale. pass iff min ratio >= c_floor;
// inconclusive when every block in range is below threshold.
CheckResult check_bernstein(const PeriodicFunction& f, double alpha, double p,
                            int j_lo, int j_hi, double c_floor = 1e-3);

// Dissipativity of the generator L = -(-Laplace)^(alpha/2): computes
//   I_j = integral |g_j|^(p-2) g_j (L g_j) dx,  g_j = block j,
// for every j >= -1 on the grid and fails if any I_j exceeds the quadrature
// slack 1e-10. For j in [j_lo, j_hi] (blocks above threshold) records
// ratio_j = -I_j / (2^(alpha j) ||g_j||_p^p); min_ratio is the empirical
// dissipativity constant.
CheckResult check_dissipativity(const PeriodicFunction& f, double alpha,
                                double p, int j_lo, int j_hi);

// Same, but the generator acts through an arbitrary nonnegative radial
// symbol: L g = -multiplier(|xi|) applied to g. alpha only sets the
// 2^(alpha j) normalization of the reported ratios.
CheckResult check_dissipativity(const PeriodicFunction& f,
                                const std::function<double(double)>& symbol,
                                double alpha, double p, int j_lo, int j_hi);

// Deterministic pseudo-random test function: three harmonics per block for
// j in [j_lo, j_hi], each placed where the block bump equals one, with
// amplitude in [0.5, 1.5] and random phase. Every targeted block is
// populated and no harmonic leaks into a neighboring block.
PeriodicFunction random_band_limited(double L, int grid_size, int j_lo,
                                     int j_hi, std::uint64_t seed);

}  // namespace levyem::spectral
