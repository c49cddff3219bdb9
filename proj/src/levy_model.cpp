#include "levyem/levy_model.hpp"

#include <cmath>
#include <stdexcept>

#include "levyem/stable_sampler.hpp"

namespace levyem::noise {

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::isotropic: return "isotropic";
        case Flavor::cylindrical: return "cylindrical";
        case Flavor::gaussian: return "gaussian";
    }
    return "?";
}

Flavor flavor_from_string(const std::string& name) {
    if (name == "isotropic") return Flavor::isotropic;
    if (name == "cylindrical") return Flavor::cylindrical;
    if (name == "gaussian") return Flavor::gaussian;
    throw std::domain_error("unknown noise flavor: " + name);
}

void LevyModel::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("LevyModel: alpha must lie in (0, 2]");
    if (dim < 1) throw std::domain_error("LevyModel: dim must be >= 1");
    if (!(scale > 0.0)) throw std::domain_error("LevyModel: scale must be > 0");
    if (flavor == Flavor::gaussian && alpha != 2.0)
        throw std::domain_error("LevyModel: gaussian flavor forces alpha = 2");
}

void sample_unit_variate(const LevyModel& model, PhiloxRng& rng,
                         std::span<double> out) {
    const int d = model.dim;
    switch (model.flavor) {
        case Flavor::cylindrical:
            for (int i = 0; i < d; ++i)
                out[i] = model.scale * cms_sample(model.alpha, rng);
            return;
        case Flavor::gaussian: {
            const double s = model.scale * std::sqrt(2.0);
            for (int i = 0; i < d; ++i) out[i] = s * rng.gaussian();
            return;
        }
        case Flavor::isotropic:
            if (d == 1) {
                out[0] = model.scale * cms_sample(model.alpha, rng);
                return;
            }
            // sqrt(2 S) N(0, I_d) with E exp(-lambda S) = exp(-lambda^(alpha/2))
            // has characteristic function exp(-|xi|^alpha); alpha = 2 makes S
            // degenerate at 1 and the factor plain sqrt(2).
            const double s0 = one_sided_stable_sample(model.alpha / 2.0, rng);
            const double factor = model.scale * std::sqrt(2.0 * s0);
            for (int i = 0; i < d; ++i) out[i] = factor * rng.gaussian();
            return;
    }
}

IncrementGrid sample_increments(const LevyModel& model, int n_fine,
                                std::uint64_t master_seed,
                                std::uint64_t path_index) {
    model.validate();
    if (!is_power_of_two(n_fine))
        throw std::invalid_argument("sample_increments: n_fine must be a power of two");

    IncrementGrid grid;
    grid.n_fine = n_fine;
    grid.dim = model.dim;
    grid.master_seed = master_seed;
    grid.path_index = path_index;
    grid.increments.resize(static_cast<std::size_t>(n_fine) * model.dim);

    PhiloxRng rng(master_seed, path_index);
    const double root = std::pow(1.0 / n_fine, 1.0 / model.alpha);
    std::span<double> all(grid.increments);
    for (int k = 0; k < n_fine; ++k) {
        auto step = all.subspan(static_cast<std::size_t>(k) * model.dim, model.dim);
        sample_unit_variate(model, rng, step);
        for (double& x : step) x *= root;
    }
    return grid;
}

namespace {
// Perfect binary tree sum over a power-of-two block. Trees over 2^m leaves
// nest exactly, which is what makes coarsening by a*b bit-identical to
// coarsening by a then by b.
double block_tree_sum(const double* x, int n, int stride) {
    if (n == 1) return *x;
    const int half = n / 2;
    return block_tree_sum(x, half, stride) +
           block_tree_sum(x + static_cast<std::ptrdiff_t>(half) * stride, half, stride);
}
}  // namespace

IncrementGrid coarsen(const IncrementGrid& grid, int factor) {
    if (!is_power_of_two(factor) || grid.n_fine % factor != 0)
        throw std::invalid_argument(
            "coarsen: factor must be a power of two dividing n_fine");

    IncrementGrid out;
    out.n_fine = grid.n_fine / factor;
    out.dim = grid.dim;
    out.master_seed = grid.master_seed;
    out.path_index = grid.path_index;
    out.increments.resize(static_cast<std::size_t>(out.n_fine) * grid.dim);
    for (int k = 0; k < out.n_fine; ++k)
        for (int i = 0; i < grid.dim; ++i)
            out.increments[static_cast<std::size_t>(k) * grid.dim + i] = block_tree_sum(
                grid.increments.data() + (static_cast<std::size_t>(k) * factor) * grid.dim + i,
                factor, grid.dim);
    return out;
}

}  // namespace levyem::noise
