#include "levyem/stable_sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace levyem::noise {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

double cms_sample(double alpha, PhiloxRng& rng) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("cms_sample: alpha must lie in (0, 2]");

    // X = sin(alpha V) / cos(V)^(1/alpha) * (cos((1-alpha)V) / W)^((1-alpha)/alpha)
    // with V ~ U(-pi/2, pi/2), W ~ Exp(1). The symmetric case needs no
    // special-casing at alpha = 1: the second factor's exponent is exactly 0
    // and pow(x, 0) == 1, leaving tan(V).
    const double v = kPi * (rng.uniform01() - 0.5);
    const double w = rng.exponential();
    const double lead = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double tail =
        std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    return lead * tail;
}

double one_sided_stable_sample(double a, PhiloxRng& rng) {
    if (a == 1.0) return 1.0;  // exp(-lambda) is the point mass at 1
    if (!(a > 0.0) || !(a < 1.0))
        throw std::domain_error("one_sided_stable_sample: a must lie in (0, 1]");

    // Kanter: S = sin(a U) / sin(U)^(1/a) * (sin((1-a)U) / W)^((1-a)/a),
    // U ~ U(0, pi), W ~ Exp(1).
    const double u = kPi * rng.uniform01();
    const double w = rng.exponential();
    return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
           std::pow(std::sin((1.0 - a) * u) / w, (1.0 - a) / a);
}

}  // namespace levyem::noise
