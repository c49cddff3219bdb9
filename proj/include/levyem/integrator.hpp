#pragma once

#include <vector>

#include "levyem/drift.hpp"
#include "levyem/levy_model.hpp"

namespace levyem::sde {

// Node projector of the n-point scheme grid: largest multiple of 1/n that is
// <= t.
double kn(double t, int n);

// Euler path recorded on the fine grid of its driving increments. Row k of
// states is the state at time k / n_fine, k = 0 .. n_fine.
struct Trajectory {
    int n_scheme = 0;
    int n_fine = 0;
    int dim = 0;
    std::vector<double> states;
    std::vector<double> x0;

    std::span<const double> at(int k) const {
        return {states.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
};

// Explicit Euler scheme with n_scheme steps driven by the increments in
// grid. The state advances at every fine node so that two schemes sharing a
// grid are coupled pathwise, but the drift is refreshed only at the scheme
// nodes k_n(t). Requires n_scheme to divide grid.n_fine, both powers of two.
Trajectory euler_maruyama(const std::vector<double>& x0, const DriftSpec& drift,
                          const noise::IncrementGrid& grid, int n_scheme);

// Finest scheme the grid supports; stands in for the exact solution when
// comparing against coarser schemes on the same noise.
Trajectory reference_solution(const std::vector<double>& x0,
                              const DriftSpec& drift,
                              const noise::IncrementGrid& grid);

// sup_t |X_t - Y_t| over the shared fine nodes. Both interpolants are
// piecewise affine between fine nodes, and so is their difference, hence the
// supremum over [0, 1] is attained at a node and the value is exact.
double sup_distance(const Trajectory& a, const Trajectory& b);

}  // namespace levyem::sde
