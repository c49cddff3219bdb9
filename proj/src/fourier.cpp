#include "levyem/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace levyem::spectral {

namespace {
// FFTW plan creation is not thread-safe (execution is)
std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}
}  // namespace

std::vector<double> apply_multiplier(std::span<const double> samples, double L,
                                     const std::function<double(double)>& m) {
    const int n = static_cast<int>(samples.size());
    if (n < 4 || !(L > 0.0))
        throw std::invalid_argument("apply_multiplier: need >= 4 samples, L > 0");

    double* in = fftw_alloc_real(n);
    fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
    fftw_plan fwd, bwd;
    {
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(n, in, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, in, FFTW_ESTIMATE);
    }
    for (int i = 0; i < n; ++i) in[i] = samples[i];
    fftw_execute(fwd);
    for (int k = 0; k <= n / 2; ++k) {
        const double factor = m(k / L) / n;
        spec[k][0] *= factor;
        spec[k][1] *= factor;
    }
    fftw_execute(bwd);
    std::vector<double> out(in, in + n);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    fftw_free(in);
    fftw_free(spec);
    return out;
}

}  // namespace levyem::spectral
