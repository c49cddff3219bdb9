#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "levyem/levy_model.hpp"

#include "json.hpp"

namespace levyem::noise {

enum class MeasureKind { isotropic, cylindrical, gaussian, radial };

// Description of a symmetric Levy measure for the analytic routines
// (characteristic exponent, nondegeneracy probing).
//
// Normalization matters and there are two conventions:
//   * stable (unit_intensity = false): the density carries the constant
//     c(d, alpha) that makes the characteristic exponent match the sampled
//     process exactly, Re(-psi) = scale^alpha |xi|^alpha (isotropic) or
//     scale^alpha sum_i |xi_i|^alpha (cylindrical).
//   * unit (unit_intensity = true): plain power-law density
//     scale^alpha r^(-d-alpha) (isotropic) or scale^alpha |z_i|^(-1-alpha)
//     per axis (cylindrical), with no stable constant. Truncated second
//     moments then have simple closed forms, e.g. the per-axis integral
//     int_{|z|<=rho} z^2 |z|^(-1-alpha) dz = 2 rho^(2-alpha) / (2-alpha).
//
// kind == radial evaluates a caller-supplied radial profile g with
// nu(dz) = g(|z|) dz; everything for it goes through quadrature.
struct MeasureSpec {
    MeasureKind kind = MeasureKind::isotropic;
    double alpha = 2.0;
    int dim = 1;
    double scale = 1.0;
    bool unit_intensity = false;
    std::vector<double> axis_scales;  // cylindrical only; empty = all equal to scale
    std::function<double(double)> radial_profile;  // kind == radial only

    static MeasureSpec from_model(const LevyModel& model);
    static MeasureSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    void validate() const;
    double axis_scale(int i) const;
};

// Constant c(d, alpha) with
//   int (1 - cos(xi . z)) c(d, alpha) |z|^(-d-alpha) dz = |xi|^alpha.
double stable_density_constant(int dim, double alpha);

// Levy symbol psi with E exp(i xi . Z_t) = exp(t psi(xi)). Symmetric
// measures give a real psi <= 0; psi(0) = 0. Closed forms are used for the
// stable-normalized builtin kinds, adaptive quadrature otherwise.
std::complex<double> char_exponent(const MeasureSpec& spec,
                                   std::span<const double> xi);
std::complex<double> char_exponent(const LevyModel& model,
                                   std::span<const double> xi);

// Always integrates the jump measure, regardless of available closed forms;
// the cross-check partner of char_exponent. Relative tolerance 1e-8; throws
// std::runtime_error with a diagnostic when that cannot be certified.
std::complex<double> char_exponent_quadrature(const MeasureSpec& spec,
                                              std::span<const double> xi);

// Truncated quadratic form int_{|z| <= rho} (eta . z)^2 nu(dz).
double truncated_quadratic(const MeasureSpec& spec, std::span<const double> eta,
                           double rho);

struct ProbeRecord {
    std::string quantity;         // "c" or "c0"
    std::vector<double> direction;
    double radius = 0.0;          // rho for "c", |xi| for "c0"
    double value = 0.0;
};

// Small-jump and symbol lower-bound estimates:
//   c_estimate  = min over (eta, rho) of rho^(alpha-2) int_{|z|<=rho} (eta.z)^2 nu(dz)
//   c0_estimate = min over probes |xi| >= M of Re(-psi(xi)) / |xi|^alpha
// The certificate is valid iff both are strictly positive.
struct NondegeneracyCertificate {
    double c_estimate = 0.0;
    double rho0 = 0.0;
    double c0_estimate = 0.0;
    double M_estimate = 0.0;
    bool valid = false;
    std::vector<ProbeRecord> probe_report;

    nlohmann::json to_json() const;
};

std::vector<double> default_rho_grid();  // {2^-1, ..., 2^-10}

NondegeneracyCertificate check_nondegeneracy(
    const MeasureSpec& spec, double alpha,
    std::span<const double> rho_grid, int eta_samples, int xi_probes,
    double M = 1.0);

NondegeneracyCertificate check_nondegeneracy(const MeasureSpec& spec);

// eta_samples quasi-uniform unit vectors; d = 1 gives {+1, -1}, d = 2 equally
// spaced angles starting at e_1 (axes included when 4 | count), d >= 3 a
// Fibonacci spiral.
std::vector<std::vector<double>> sphere_directions(int dim, int count);

}  // namespace levyem::noise
