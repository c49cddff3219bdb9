#include "levyem/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace levyem::sde {

double kn(double t, int n) {
    if (n < 1) throw std::domain_error("kn: n must be >= 1");
    return std::floor(n * t) / n;
}

Trajectory euler_maruyama(const std::vector<double>& x0, const DriftSpec& drift,
                          const noise::IncrementGrid& grid, int n_scheme) {
    const int d = grid.dim;
    if (static_cast<int>(x0.size()) != d)
        throw std::invalid_argument("euler_maruyama: x0 dimension mismatch");
    if (drift.dim != d)
        throw std::invalid_argument("euler_maruyama: drift dimension mismatch");
    if (n_scheme < 1 || !noise::is_power_of_two(n_scheme) ||
        grid.n_fine % n_scheme != 0)
        throw std::invalid_argument(
            "euler_maruyama: n_scheme must be a power of two dividing n_fine");

    const int stride = grid.n_fine / n_scheme;
    const double dt = 1.0 / grid.n_fine;

    Trajectory traj;
    traj.n_scheme = n_scheme;
    traj.n_fine = grid.n_fine;
    traj.dim = d;
    traj.x0 = x0;
    traj.states.resize(static_cast<std::size_t>(grid.n_fine + 1) * d);

    std::vector<double> state = x0;
    std::vector<double> frozen(d);
    for (int i = 0; i < d; ++i) traj.states[i] = state[i];

    for (int k = 0; k < grid.n_fine; ++k) {
        if (k % stride == 0) drift(state, frozen);
        const auto dz = grid.step(k);
        for (int i = 0; i < d; ++i) state[i] += frozen[i] * dt + dz[i];
        double* row = traj.states.data() + static_cast<std::size_t>(k + 1) * d;
        for (int i = 0; i < d; ++i) row[i] = state[i];
    }
    return traj;
}

Trajectory reference_solution(const std::vector<double>& x0,
                              const DriftSpec& drift,
                              const noise::IncrementGrid& grid) {
    return euler_maruyama(x0, drift, grid, grid.n_fine);
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
    if (a.n_fine != b.n_fine || a.dim != b.dim)
        throw std::invalid_argument("sup_distance: trajectories must share a grid");
    double sup2 = 0.0;
    for (int k = 0; k <= a.n_fine; ++k) {
        const auto xa = a.at(k);
        const auto xb = b.at(k);
        double d2 = 0.0;
        for (int i = 0; i < a.dim; ++i) d2 += (xa[i] - xb[i]) * (xa[i] - xb[i]);
        sup2 = std::max(sup2, d2);
    }
    return std::sqrt(sup2);
}

}  // namespace levyem::sde
