#include "levyem/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "levyem/fourier.hpp"
#include "levyem/philox.hpp"

namespace levyem::spectral {

namespace {

constexpr double kBlockThreshold = 1e-10;
constexpr double kQuadratureSlack = 1e-10;

double bump_edge(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// smooth step: 0 for t <= 0, 1 for t >= 1, C-infinity in between
double smooth_step(double t) {
    const double a = bump_edge(t);
    const double b = bump_edge(1.0 - t);
    return a / (a + b);
}

double pow2(int j) { return std::ldexp(1.0, j); }

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double signed_power(double g, double pm2) {
    // |g|^(p-2) g, the odd power driving the dissipativity integrand
    if (pm2 == 0.0) return g;
    return std::pow(std::abs(g), pm2) * g;
}

}  // namespace

double PeriodicFunction::dx() const {
    return 2.0 * std::numbers::pi * L / grid_size();
}

double PeriodicFunction::nyquist() const { return grid_size() / (2.0 * L); }

void PeriodicFunction::validate() const {
    if (!(L > 0.0)) throw std::invalid_argument("PeriodicFunction: L must be > 0");
    if (grid_size() < 4 || !power_of_two(grid_size()))
        throw std::invalid_argument(
            "PeriodicFunction: grid size must be a power of two >= 4");
    for (double v : samples)
        if (!std::isfinite(v))
            throw std::invalid_argument("PeriodicFunction: non-finite sample");
}

double chi(double xi) {
    const double a = std::abs(xi);
    if (a <= 0.75) return 1.0;
    if (a >= 1.0) return 0.0;
    return smooth_step((1.0 - a) / 0.25);
}

double phi(double xi) { return chi(xi) - chi(2.0 * xi); }

DyadicBlock dyadic_block(const PeriodicFunction& f, int j) {
    f.validate();
    if (j < -1) throw std::invalid_argument("dyadic_block: j must be >= -1");
    const double inv_scale = j < 0 ? 2.0 : 1.0 / pow2(j);
    DyadicBlock block;
    block.j = j;
    block.f.L = f.L;
    block.f.samples = apply_multiplier(f.samples, f.L, [&](double xi) {
        return j < 0 ? chi(2.0 * xi) : phi(inv_scale * xi);
    });
    return block;
}

int max_block_index(const PeriodicFunction& f) {
    // block j occupies 2^j * [3/8, 1]; it meets the grid spectrum iff
    // 3/8 * 2^j <= nyquist
    return static_cast<int>(std::floor(std::log2(f.nyquist() * 8.0 / 3.0)));
}

double lp_norm(const PeriodicFunction& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.samples) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double acc = 0.0;
    for (double v : f.samples) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.dx(), 1.0 / p);
}

double besov_norm(const PeriodicFunction& f, double s, double p) {
    f.validate();
    const int j_max = max_block_index(f);
    if (std::isinf(p)) {
        double sup = 0.0;
        for (int j = -1; j <= j_max; ++j)
            sup = std::max(sup,
                           std::pow(2.0, j * s) * lp_norm(dyadic_block(f, j).f, p));
        return sup;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1");
    double acc = 0.0;
    for (int j = -1; j <= j_max; ++j)
        acc += std::pow(2.0, j * s * p) *
               std::pow(lp_norm(dyadic_block(f, j).f, p), p);
    return std::pow(acc, 1.0 / p);
}

PeriodicFunction frac_laplacian(const PeriodicFunction& f, double order) {
    f.validate();
    if (!(order > 0.0) || !(order <= 2.0))
        throw std::domain_error("frac_laplacian: order must be in (0, 2]");
    PeriodicFunction out;
    out.L = f.L;
    out.samples = apply_multiplier(
        f.samples, f.L, [order](double xi) { return std::pow(xi, order); });
    return out;
}

CheckResult check_bernstein(const PeriodicFunction& f, double alpha, double p,
                            int j_lo, int j_hi, double c_floor) {
    f.validate();
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("check_bernstein: alpha must be in (0, 2]");
    if (!(p >= 2.0)) throw std::domain_error("check_bernstein: p must be >= 2");
    if (j_lo < -1 || j_hi < j_lo)
        throw std::invalid_argument("check_bernstein: bad j range");

    CheckResult result;
    result.min_ratio = std::numeric_limits<double>::infinity();
    const double dx = f.dx();
    for (int j = j_lo; j <= j_hi; ++j) {
        const DyadicBlock block = dyadic_block(f, j);
        const double np = lp_norm(block.f, p);
        if (np <= kBlockThreshold) continue;

        PeriodicFunction envelope;
        envelope.L = f.L;
        envelope.samples.resize(block.f.samples.size());
        for (std::size_t i = 0; i < envelope.samples.size(); ++i)
            envelope.samples[i] = std::pow(std::abs(block.f.samples[i]), p / 2.0);
        const PeriodicFunction rough = frac_laplacian(envelope, alpha / 2.0);

        double numerator = 0.0;
        for (double v : rough.samples) numerator += v * v;
        numerator *= dx;

        const double ratio =
            numerator / (std::pow(2.0, alpha * j) * std::pow(np, p));
        result.per_j.push_back({j, ratio, np});
        result.min_ratio = std::min(result.min_ratio, ratio);
        result.max_ratio = std::max(result.max_ratio, ratio);
    }
    if (result.per_j.empty()) {
        result.min_ratio = 0.0;
        result.status = CheckStatus::inconclusive;
    } else {
        result.status = result.min_ratio >= c_floor ? CheckStatus::pass
                                                    : CheckStatus::fail;
    }
    return result;
}

CheckResult check_dissipativity(const PeriodicFunction& f, double alpha,
                                double p, int j_lo, int j_hi) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("check_dissipativity: alpha must be in (0, 2]");
    return check_dissipativity(
        f, [alpha](double xi) { return std::pow(xi, alpha); }, alpha, p, j_lo,
        j_hi);
}

CheckResult check_dissipativity(const PeriodicFunction& f,
                                const std::function<double(double)>& symbol,
                                double alpha, double p, int j_lo, int j_hi) {
    f.validate();
    if (!(p >= 2.0))
        throw std::domain_error("check_dissipativity: p must be >= 2");
    if (j_lo < -1 || j_hi < j_lo)
        throw std::invalid_argument("check_dissipativity: bad j range");

    CheckResult result;
    result.min_ratio = std::numeric_limits<double>::infinity();
    const double dx = f.dx();
    const double pm2 = p - 2.0;
    bool nonpositive = true;

    const int j_max = std::max(max_block_index(f), j_hi);
    for (int j = -1; j <= j_max; ++j) {
        const DyadicBlock block = dyadic_block(f, j);
        std::vector<double> generated =
            apply_multiplier(block.f.samples, f.L, symbol);
        double integral = 0.0;
        for (std::size_t i = 0; i < generated.size(); ++i)
            integral -= signed_power(block.f.samples[i], pm2) * generated[i];
        integral *= dx;
        if (integral > kQuadratureSlack) nonpositive = false;

        if (j < j_lo || j > j_hi) continue;
        const double np = lp_norm(block.f, p);
        if (np <= kBlockThreshold) continue;
        const double ratio =
            -integral / (std::pow(2.0, alpha * j) * std::pow(np, p));
        result.per_j.push_back({j, ratio, np});
        result.min_ratio = std::min(result.min_ratio, ratio);
        result.max_ratio = std::max(result.max_ratio, ratio);
    }

    if (!nonpositive) {
        result.status = CheckStatus::fail;
        if (result.per_j.empty()) result.min_ratio = 0.0;
    } else if (result.per_j.empty()) {
        result.min_ratio = 0.0;
        result.status = CheckStatus::inconclusive;
    } else {
        result.status = result.min_ratio > 0.0 ? CheckStatus::pass
                                               : CheckStatus::fail;
    }
    return result;
}

PeriodicFunction random_band_limited(double L, int grid_size, int j_lo,
                                     int j_hi, std::uint64_t seed) {
    if (j_lo < 0 || j_hi < j_lo)
        throw std::invalid_argument("random_band_limited: bad j range");
    PeriodicFunction f;
    f.L = L;
    f.samples.assign(static_cast<std::size_t>(grid_size), 0.0);
    f.validate();

    noise::PhiloxRng rng(seed, noise::kStreamTestFunctions);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = j_lo; j <= j_hi; ++j) {
        // harmonics kept strictly inside the phi == 1 plateau of block j
        const long long m_lo = static_cast<long long>(std::ceil(L * 0.51 * pow2(j)));
        const long long m_hi =
            static_cast<long long>(std::floor(L * 0.73 * pow2(j)));
        if (m_lo > m_hi || m_hi >= grid_size / 2)
            throw std::invalid_argument(
                "random_band_limited: block does not fit the grid");
        for (int h = 0; h < 3; ++h) {
            const long long m =
                m_lo + static_cast<long long>(
                           rng.uniform_below(static_cast<std::uint64_t>(m_hi - m_lo + 1)));
            const double amp = 0.5 + rng.uniform01();
            const double phase = two_pi * rng.uniform01();
            for (int i = 0; i < grid_size; ++i)
                f.samples[i] +=
                    amp * std::cos(two_pi * m * i / grid_size + phase);
        }
    }
    return f;
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

nlohmann::json CheckResult::to_json() const {
    nlohmann::json j;
    j["status"] = to_string(status);
    j["min_ratio"] = min_ratio;
    j["max_ratio"] = max_ratio;
    j["per_j"] = nlohmann::json::array();
    for (const auto& r : per_j)
        j["per_j"].push_back(
            {{"j", r.j}, {"ratio", r.ratio}, {"block_norm", r.block_norm}});
    return j;
}

}  // namespace levyem::spectral
