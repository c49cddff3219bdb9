#pragma once

#include "levyem/philox.hpp"

namespace levyem::noise {

// One draw from the standard symmetric alpha-stable law, characteristic
// function exp(-|xi|^alpha), via the Chambers-Mallows-Stuck transform.
// alpha = 1 reduces to the standard Cauchy, alpha = 2 to N(0,2) (note the
// variance-2 convention implied by exp(-xi^2)). Throws std::domain_error
// outside alpha in (0,2].
double cms_sample(double alpha, PhiloxRng& rng);

// One draw from the one-sided a-stable law with Laplace transform
// exp(-lambda^a), 0 < a < 1, via Kanter's transform. a = 1 returns the
// degenerate value 1. Used as the subordinator in isotropic sampling.
double one_sided_stable_sample(double a, PhiloxRng& rng);

}  // namespace levyem::noise
