#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "levyem/philox.hpp"

namespace levyem::noise {

enum class Flavor { isotropic, cylindrical, gaussian };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& name);

// Driving noise description. The characteristic function convention is
//   isotropic / gaussian:  E exp(i xi . Z_t) = exp(-scale^alpha |xi|^alpha t)
//   cylindrical:           E exp(i xi . Z_t) = exp(-scale^alpha sum_i |xi_i|^alpha t)
// so alpha = 2 means each coordinate of Z_t is N(0, 2 scale^2 t), variance 2,
// not 1. The cylindrical flavor has independent 1-d symmetric stable
// coordinates; its Levy measure lives on the axes and is singular with
// respect to Lebesgue measure in d >= 2.
struct LevyModel {
    double alpha = 2.0;
    int dim = 1;
    Flavor flavor = Flavor::gaussian;
    double scale = 1.0;

    void validate() const;  // throws std::domain_error on a bad combination
};

// Increments of one noise path over the uniform grid {k/n_fine}. Row-major:
// step(k)[i] is coordinate i of Z_{(k+1)/n} - Z_{k/n}. Bit-for-bit
// reproducible from (master_seed, path_index, n_fine, model).
struct IncrementGrid {
    int n_fine = 0;
    int dim = 1;
    std::vector<double> increments;  // n_fine * dim
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;

    std::span<const double> step(int k) const {
        return {increments.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
};

// Draws the n_fine increments of one path. Each step is scaled by
// h^(1/alpha) self-similarity from a unit-time variate. Isotropic noise in
// d >= 2 uses Gaussian subordination: Z = scale h^(1/alpha) sqrt(2 S) N(0, I)
// with S one-sided (alpha/2)-stable, which is exact in law.
IncrementGrid sample_increments(const LevyModel& model, int n_fine,
                                std::uint64_t master_seed,
                                std::uint64_t path_index);

// One unit-time increment Z_1 of the model, written to out (size dim).
void sample_unit_variate(const LevyModel& model, PhiloxRng& rng,
                         std::span<double> out);

// Block sums of consecutive increments, left to right: the same path viewed
// on the coarser grid with n_fine / factor steps. factor must be a power of
// two dividing n_fine.
IncrementGrid coarsen(const IncrementGrid& grid, int factor);

inline bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace levyem::noise
