#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>

namespace levyem::sde {

// Drift coefficient b together with its declared Holder data: b is C^beta
// with |b(x) - b(y)| <= cbeta_bound |x - y|^beta and sup |b| <= cbeta_bound
// on the certification box.
struct DriftSpec {
    std::function<void(std::span<const double>, std::span<double>)> evaluate;
    double beta = 1.0;
    double cbeta_bound = 0.0;
    int dim = 1;
    std::string name = "custom";

    void operator()(std::span<const double> x, std::span<double> out) const {
        evaluate(x, out);
    }
};

// Componentwise bounded Holder drift b_i(x) = sign(x_i) min(|x_i|, 1)^beta,
// beta in (0,1). Per component the Holder seminorm is at most 2^(1-beta) and
// sup |b_i| = 1; in Euclidean norm both pick up dimension factors, giving
// cbeta_bound = sqrt(d) + 2^(1-beta) d^((1-beta)/2).
DriftSpec make_holder_drift(double beta, int dim);

// b(x) = coef * x, Lipschitz (beta = 1). The declared bound covers the
// certification box [-2, 2]^d.
DriftSpec make_linear_drift(double coef, int dim);

DriftSpec make_zero_drift(int dim);

// Probe-grid certification of the declared Holder data on [-box, box]^d:
// max |b| over the grid and the max of |b(x)-b(y)| / |x-y|^beta over probe
// pairs. margin() >= 0 means the declaration holds on the probes.
struct HolderScan {
    double max_abs = 0.0;
    double max_ratio = 0.0;
    double declared_bound = 0.0;
    double margin() const {
        return declared_bound - std::max(max_abs, max_ratio);
    }
};

HolderScan holder_scan(const DriftSpec& drift, double box, int grid_points);

}  // namespace levyem::sde
