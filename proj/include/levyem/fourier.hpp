#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levyem::spectral {

// Applies a radial Fourier multiplier to real samples on a uniform grid of
// the torus of circumference 2*pi*L. Harmonic k of the DFT oscillates as
// exp(i k x / L), so the multiplier is evaluated at |xi| = k / L for
// k = 0 .. N/2. Deterministic for fixed input.
std::vector<double> apply_multiplier(std::span<const double> samples, double L,
                                     const std::function<double(double)>& m);

}  // namespace levyem::spectral
