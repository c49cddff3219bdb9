#include "levyem/drift.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "levyem/philox.hpp"

namespace levyem::sde {

DriftSpec make_holder_drift(double beta, int dim) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("make_holder_drift: beta must lie in (0, 1)");
    if (dim < 1) throw std::domain_error("make_holder_drift: dim must be >= 1");
    DriftSpec d;
    d.beta = beta;
    d.cbeta_bound = std::sqrt(static_cast<double>(dim)) +
                    std::pow(2.0, 1.0 - beta) *
                        std::pow(static_cast<double>(dim), 0.5 * (1.0 - beta));
    d.dim = dim;
    d.name = "holder";
    d.evaluate = [beta](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double a = std::abs(x[i]);
            const double v = std::pow(std::min(a, 1.0), beta);
            out[i] = x[i] < 0.0 ? -v : (x[i] > 0.0 ? v : 0.0);
        }
    };
    return d;
}

DriftSpec make_linear_drift(double coef, int dim) {
    if (dim < 1) throw std::domain_error("make_linear_drift: dim must be >= 1");
    DriftSpec d;
    d.beta = 1.0;
    d.cbeta_bound = std::abs(coef) * (1.0 + 2.0 * std::sqrt(static_cast<double>(dim)));
    d.dim = dim;
    d.name = "linear";
    d.evaluate = [coef](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = coef * x[i];
    };
    return d;
}

DriftSpec make_zero_drift(int dim) {
    if (dim < 1) throw std::domain_error("make_zero_drift: dim must be >= 1");
    DriftSpec d;
    d.beta = 1.0;
    d.cbeta_bound = 1.0;
    d.dim = dim;
    d.name = "zero";
    d.evaluate = [](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = 0.0;
    };
    return d;
}

HolderScan holder_scan(const DriftSpec& drift, double box, int grid_points) {
    if (!(box > 0.0) || grid_points < 2)
        throw std::invalid_argument("holder_scan: need box > 0 and at least two probes");
    const int d = drift.dim;

    std::vector<std::vector<double>> pts;
    if (d == 1) {
        for (int i = 0; i < grid_points; ++i)
            pts.push_back({-box + 2.0 * box * i / (grid_points - 1)});
    } else {
        noise::PhiloxRng rng(0x9e3779b97f4a7c15ull, 0);
        for (int i = 0; i < grid_points; ++i) {
            std::vector<double> x(d);
            for (double& v : x) v = box * (2.0 * rng.uniform01() - 1.0);
            pts.push_back(std::move(x));
        }
    }
    // kink neighborhood of the capped-power drifts
    for (double special : {0.0, 1e-9, -1e-9, 1.0, -1.0, 1.0 + 1e-9, 1.0 - 1e-9})
        pts.push_back(std::vector<double>(d, special));

    std::vector<std::vector<double>> vals(pts.size(), std::vector<double>(d));
    HolderScan scan;
    scan.declared_bound = drift.cbeta_bound;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        drift(pts[i], vals[i]);
        double n2 = 0.0;
        for (double v : vals[i]) n2 += v * v;
        scan.max_abs = std::max(scan.max_abs, std::sqrt(n2));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double dx2 = 0.0, db2 = 0.0;
            for (int k = 0; k < d; ++k) {
                dx2 += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
                db2 += (vals[i][k] - vals[j][k]) * (vals[i][k] - vals[j][k]);
            }
            if (dx2 == 0.0) continue;
            const double ratio = std::sqrt(db2) / std::pow(std::sqrt(dx2), drift.beta);
            scan.max_ratio = std::max(scan.max_ratio, ratio);
        }
    }
    return scan;
}

}  // namespace levyem::sde
