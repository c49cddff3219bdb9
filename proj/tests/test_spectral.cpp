#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "levyem/fourier.hpp"
#include "levyem/measure.hpp"
#include "levyem/periodic.hpp"
#include "testutil.hpp"

using namespace levyem::spectral;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PeriodicFunction tone(double L, int grid, double xi0, double phase = 0.0) {
    PeriodicFunction f;
    f.L = L;
    f.samples.resize(grid);
    for (int i = 0; i < grid; ++i)
        f.samples[i] = std::cos(xi0 * (kTwoPi * L * i / grid) + phase);
    return f;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("cutoff and bump pointwise values") {
    CHECK(chi(0.0) == 1.0);
    CHECK(chi(0.75) == 1.0);
    CHECK(chi(-0.5) == 1.0);
    CHECK(chi(1.0) == 0.0);
    CHECK(chi(3.0) == 0.0);
    CHECK(chi(0.8) > chi(0.9));
    CHECK(chi(0.8) < 1.0);
    CHECK(chi(0.9) > 0.0);

    CHECK(phi(0.5) == 1.0);
    CHECK(phi(0.375) == 0.0);
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(0.3) == 0.0);
    CHECK(phi(2.0) == 0.0);
    CHECK(phi(0.7) > 0.0);
}

TEST_CASE("bumps telescope to one at every frequency") {
    for (double xi : {0.0, 0.1, 0.375, 0.5, 0.9, 1.0, 7.3, 64.0, 511.9, 512.0}) {
        double total = chi(2.0 * xi);
        for (int j = 0; j <= 24; ++j)
            total += phi(std::ldexp(1.0, -j) * xi);
        CHECK(std::abs(total - 1.0) < 1e-15);
    }
}

TEST_CASE("dyadic blocks reconstruct the function") {
    PeriodicFunction f = random_band_limited(16.0, 1 << 14, 0, 8, 41);
    // add low-frequency content so block -1 participates too
    for (int i = 0; i < f.grid_size(); ++i) f.samples[i] += 0.7;

    std::vector<double> sum(f.samples.size(), 0.0);
    for (int j = -1; j <= max_block_index(f); ++j) {
        const DyadicBlock block = dyadic_block(f, j);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += block.f.samples[i];
    }
    CHECK(max_abs_diff(sum, f.samples) < 1e-10);
}

TEST_CASE("constants live entirely in the low block") {
    PeriodicFunction f;
    f.L = 16.0;
    f.samples.assign(1 << 10, 0.37);
    CHECK(max_abs_diff(dyadic_block(f, -1).f.samples, f.samples) < 1e-14);
    for (int j = 0; j <= max_block_index(f); ++j)
        CHECK(max_abs(dyadic_block(f, j).f.samples) < 1e-14);
}

TEST_CASE("a pure tone lands in exactly one block") {
    // frequency 2^5 sits at the lower edge of annulus 5, where the bump
    // vanishes, and on the plateau of annulus 6
    const PeriodicFunction f = tone(16.0, 1 << 14, 32.0);
    CHECK(max_abs_diff(dyadic_block(f, 6).f.samples, f.samples) < 1e-12);
    for (int j : {3, 4, 5, 7, 8})
        CHECK(max_abs(dyadic_block(f, j).f.samples) < 1e-12);
}

TEST_CASE("block spectra are confined to their annulus") {
    const PeriodicFunction f = random_band_limited(16.0, 1 << 14, 2, 8, 17);
    for (int j : {3, 5, 7}) {
        const DyadicBlock block = dyadic_block(f, j);
        const double lo = std::ldexp(3.0, j - 3);  // 2^j * 3/8
        const double hi = std::ldexp(1.0, j);
        const auto outside = apply_multiplier(
            block.f.samples, f.L,
            [&](double xi) { return (xi >= lo && xi <= hi) ? 0.0 : 1.0; });
        CHECK(max_abs(outside) < 1e-12);
    }
}

TEST_CASE("grid norms of a tone") {
    const double L = 16.0;
    const PeriodicFunction f = tone(L, 1 << 12, 8.0);
    // cos^2 integrates to half the circumference; exact on the grid
    CHECK(lp_norm(f, 2.0) ==
          doctest::Approx(std::sqrt(std::numbers::pi * L)).epsilon(1e-13));
    CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS((void)lp_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("besov norm of a constant reduces to the low block") {
    PeriodicFunction f;
    f.L = 16.0;
    f.samples.assign(1 << 10, -2.0);
    const double s = 0.6, p = 4.0;
    const double expected =
        std::pow(2.0, -s) * 2.0 *
        std::pow(kTwoPi * f.L, 1.0 / p);  // 2^(-s) |c| (2 pi L)^(1/p)
    CHECK(besov_norm(f, s, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("besov norm scales dyadically over tones") {
    const double s = 0.6;
    const double base = besov_norm(tone(16.0, 1 << 14, 16.0), s, 2.0);
    const double up = besov_norm(tone(16.0, 1 << 14, 32.0), s, 2.0);
    CHECK(up / base == doctest::Approx(std::pow(2.0, s)).epsilon(1e-12));
}

TEST_CASE("Holder-continuous profile has a grid-stable Besov seminorm") {
    // |sin(x / (2L))|^0.6 is C^0.6 at its zeros, so its B^0.6_inf,inf norm
    // is finite and should not drift when the grid is refined
    const double s = 0.6;
    auto profile = [s](double L, int grid) {
        PeriodicFunction f;
        f.L = L;
        f.samples.resize(grid);
        for (int i = 0; i < grid; ++i) {
            const double x = kTwoPi * L * i / grid;
            f.samples[i] = std::pow(std::abs(std::sin(x / (2.0 * L))), s);
        }
        return f;
    };
    const double coarse = besov_norm(profile(16.0, 1 << 14), s,
                                     std::numeric_limits<double>::infinity());
    const double fine = besov_norm(profile(16.0, 1 << 15), s,
                                   std::numeric_limits<double>::infinity());
    CHECK(coarse > 0.0);
    CHECK(std::abs(fine - coarse) / coarse < 0.02);
}

TEST_CASE("fractional Laplacian acts diagonally on tones") {
    const PeriodicFunction f = tone(16.0, 1 << 12, 8.0, 0.3);
    const PeriodicFunction g = frac_laplacian(f, 1.5);
    const double factor = std::pow(8.0, 1.5);
    // roundoff from the top FFT bins is amplified by the largest multiplier
    // value on the grid, so the comparison is absolute, not relative
    double worst = 0.0;
    for (int i = 0; i < f.grid_size(); ++i)
        worst = std::max(worst, std::abs(g.samples[i] - factor * f.samples[i]));
    CHECK(worst < 1e-9);

    PeriodicFunction c;
    c.L = 4.0;
    c.samples.assign(256, 5.0);
    CHECK(max_abs(frac_laplacian(c, 0.8).samples) < 1e-12);

    CHECK_THROWS_AS((void)frac_laplacian(f, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)frac_laplacian(f, 2.5), std::domain_error);
}

TEST_CASE("order-two multiplier matches minus the second derivative") {
    const double L = 16.0;
    const int n = 1 << 14;
    PeriodicFunction f;
    f.L = L;
    f.samples.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = kTwoPi * L * i / n;
        f.samples[i] = std::exp(std::cos(x / L));
    }
    const PeriodicFunction lap = frac_laplacian(f, 2.0);

    // analytic: -f'' = exp(cos(x/L)) (cos(x/L) - sin^2(x/L)) / L^2
    double worst_analytic = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = kTwoPi * L * i / n;
        const double c = std::cos(x / L), s = std::sin(x / L);
        const double truth = std::exp(c) * (c - s * s) / (L * L);
        worst_analytic = std::max(worst_analytic, std::abs(lap.samples[i] - truth));
    }
    CHECK(worst_analytic < 1e-8);

    // independent of calculus: centered second difference, O(dx^2) accurate
    const double h = f.dx();
    double worst_fd = 0.0;
    for (int i = 0; i < n; ++i) {
        const double fd = -(f.samples[(i + 1) % n] - 2.0 * f.samples[i] +
                            f.samples[(i + n - 1) % n]) /
                          (h * h);
        worst_fd = std::max(worst_fd, std::abs(lap.samples[i] - fd));
    }
    CHECK(worst_fd < 1e-6);
}

TEST_CASE("rectified-envelope localization ratio of a tone, p = 2") {
    // envelope |cos|^(p/2) = |cos| has the classical cosine series, giving
    //   ratio = (16 / pi^2) (xi0 / 2^j)^alpha sum_k (2k)^alpha / (4k^2-1)^2
    // up to grid aliasing of the rectified harmonics (well under 2%)
    const double L = 16.0;
    const double xi0 = 8.0;
    const int j = 4;
    const PeriodicFunction f = tone(L, 1 << 14, xi0);
    for (double alpha : {0.8, 1.5}) {
        double series = 0.0;
        for (int k = 1; k <= 200000; ++k) {
            const double den = 4.0 * static_cast<double>(k) * k - 1.0;
            series += std::pow(2.0 * k, alpha) / (den * den);
        }
        const double expected = 16.0 / (std::numbers::pi * std::numbers::pi) *
                                std::pow(xi0 / std::ldexp(1.0, j), alpha) * series;

        const CheckResult r = check_bernstein(f, alpha, 2.0, 3, 6);
        REQUIRE(r.per_j.size() == 1);
        CHECK(r.per_j[0].j == j);
        CHECK(std::abs(r.per_j[0].ratio - expected) / expected < 0.02);
        CHECK(r.status == CheckStatus::pass);
    }
}

TEST_CASE("rectified-envelope localization ratio of a tone, p = 4") {
    // envelope |cos|^2 is band limited, so the ratio is exact:
    //   (2 xi0 / 2^j)^alpha / 3
    const PeriodicFunction f = tone(16.0, 1 << 14, 8.0);
    for (double alpha : {0.8, 1.5}) {
        const CheckResult r = check_bernstein(f, alpha, 4.0, 4, 4);
        REQUIRE(r.per_j.size() == 1);
        const double expected = std::pow(2.0 * 8.0 / 16.0, alpha) / 3.0;
        CHECK(r.per_j[0].ratio == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("localization ratios ignore the overall amplitude") {
    const PeriodicFunction f = random_band_limited(16.0, 1 << 14, 3, 6, 9);
    PeriodicFunction g = f;
    for (double& v : g.samples) v *= 2.0;
    const CheckResult rf = check_bernstein(f, 1.5, 4.0, 3, 6);
    const CheckResult rg = check_bernstein(g, 1.5, 4.0, 3, 6);
    REQUIRE(rf.per_j.size() == rg.per_j.size());
    for (std::size_t i = 0; i < rf.per_j.size(); ++i)
        CHECK(rg.per_j[i].ratio ==
              doctest::Approx(rf.per_j[i].ratio).epsilon(1e-12));
}

TEST_CASE("localization check on random band-limited functions") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const PeriodicFunction f = random_band_limited(16.0, 1 << 14, 3, 7, seed);
        const CheckResult r = check_bernstein(f, 1.5, 4.0, 3, 7);
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.per_j.size() == 5);
        CHECK(r.min_ratio >= 1e-3);
        CHECK(r.max_ratio / r.min_ratio < 10.0);
    }
    // empty range: every block in [0, 1] is silent for this function
    const PeriodicFunction hi = random_band_limited(16.0, 1 << 14, 5, 6, 4);
    CHECK(check_bernstein(hi, 1.5, 4.0, 0, 1).status == CheckStatus::inconclusive);
}

TEST_CASE("generator dissipativity on blocks") {
    const PeriodicFunction f = random_band_limited(16.0, 1 << 14, 3, 7, 21);
    const CheckResult r = check_dissipativity(f, 1.5, 4.0, 3, 7);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.min_ratio > 0.0);
    for (const auto& row : r.per_j) CHECK(row.ratio > 0.0);
}

TEST_CASE("dissipativity of a tone has the exact dyadic ratio, p = 4") {
    const PeriodicFunction f = tone(16.0, 1 << 14, 8.0);
    for (double alpha : {0.8, 1.5}) {
        const CheckResult r = check_dissipativity(f, alpha, 4.0, 4, 4);
        REQUIRE(r.per_j.size() == 1);
        CHECK(r.per_j[0].ratio ==
              doctest::Approx(std::pow(8.0 / 16.0, alpha)).epsilon(1e-10));
        CHECK(r.status == CheckStatus::pass);
    }
}

TEST_CASE("p = 2 dissipativity integral obeys the Plancherel identity") {
    const double alpha = 1.5;
    const PeriodicFunction f = random_band_limited(16.0, 1 << 14, 3, 7, 33);
    const CheckResult r = check_dissipativity(f, alpha, 2.0, 3, 7);
    REQUIRE(r.status == CheckStatus::pass);
    for (const auto& row : r.per_j) {
        const DyadicBlock block = dyadic_block(f, row.j);
        const PeriodicFunction half = frac_laplacian(block.f, alpha / 2.0);
        double l2sq = 0.0;
        for (double v : half.samples) l2sq += v * v;
        l2sq *= f.dx();
        const double integral =
            row.ratio * std::pow(2.0, alpha * row.j) *
            std::pow(row.block_norm, 2.0);
        CHECK(integral == doctest::Approx(l2sq).epsilon(1e-8));
    }
}

TEST_CASE("dissipativity through a tabulated jump-measure symbol") {
    // one-dimensional stable symbol evaluated by quadrature at every grid
    // frequency must reproduce the plain |xi|^alpha route
    using levyem::noise::MeasureKind;
    using levyem::noise::MeasureSpec;
    const double L = 4.0;
    const int grid = 1 << 10;
    const double alpha = 1.2;

    MeasureSpec spec;
    spec.kind = MeasureKind::cylindrical;
    spec.alpha = alpha;
    spec.dim = 1;

    std::vector<double> table(grid / 2 + 1);
    for (int k = 0; k < static_cast<int>(table.size()); ++k) {
        const std::vector<double> xi = {k / L};
        table[k] = -char_exponent_quadrature(spec, xi).real();
    }
    const auto symbol = [&](double xi) {
        return table[static_cast<int>(std::lround(xi * L))];
    };

    const PeriodicFunction f = random_band_limited(L, grid, 2, 5, 13);
    const CheckResult via_table = check_dissipativity(f, symbol, alpha, 4.0, 2, 5);
    const CheckResult direct = check_dissipativity(f, alpha, 4.0, 2, 5);
    REQUIRE(via_table.per_j.size() == direct.per_j.size());
    CHECK(via_table.status == CheckStatus::pass);
    for (std::size_t i = 0; i < direct.per_j.size(); ++i)
        CHECK(via_table.per_j[i].ratio ==
              doctest::Approx(direct.per_j[i].ratio).epsilon(1e-7));
}

TEST_CASE("spectral validation throws") {
    PeriodicFunction bad;
    bad.L = 16.0;
    bad.samples.assign(3, 0.0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    const PeriodicFunction f = tone(16.0, 256, 2.0);
    CHECK_THROWS_AS((void)dyadic_block(f, -2), std::invalid_argument);
    CHECK_THROWS_AS((void)check_bernstein(f, 1.5, 1.0, 0, 3), std::domain_error);
    CHECK_THROWS_AS((void)check_bernstein(f, 2.5, 2.0, 0, 3), std::domain_error);
    CHECK_THROWS_AS((void)check_dissipativity(f, 1.5, 4.0, 5, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)random_band_limited(16.0, 1 << 14, -1, 3, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)random_band_limited(16.0, 64, 0, 8, 0),
                    std::invalid_argument);
}
