#pragma once

#include <complex>

namespace cow {

/// One Laguerre-Gaussian beam instance. The OAM beam is the p = 0 case.
struct Beam {
    int mode = 1;             // ell, topological charge, nonzero
    int radial_index = 0;     // p >= 0
    double waist_radius = 1.0; // w0, m
    double wavelength = 0.3;   // lambda, m

    double rayleigh_range() const;
    double beam_radius(double z) const;  // w(z) = w0*sqrt(1 + (z/z_R)^2)
    double wave_number() const;          // beta = 2*pi/lambda

    void validate() const;  // throws std::invalid_argument
};

/// Associated Laguerre polynomial L_p^alpha(x) via the three-term recurrence.
double laguerre_polynomial(int p, int alpha, double x);

/// Complex LG amplitude U_{p,ell}(r, theta, z).
std::complex<double> lg_amplitude(const Beam& b, double r, double theta, double z);

/// Ring intensity of the p = 0 beam; rejects radial_index != 0.
/// Integrates to 1 over the transverse plane.
double lg_intensity(const Beam& b, double r, double z);

/// Radius of maximum intensity, sqrt(|ell|/2) * w(z).
double max_intensity_radius(const Beam& b, double z);

/// Intensity attained at max_intensity_radius.
double peak_intensity(const Beam& b, double z);

/// Smallest ring radius at distance z for which a waist radius exists.
double feasible_radius(double z, double lambda, int ell);

/// Waist radius placing the intensity ring at r_target when observed at z.
/// Returns the smaller of the two roots. Throws std::domain_error when
/// r_target < feasible_radius(z, lambda, ell).
double waist_from_target_radius(double r_target, double z, double lambda, int ell);

}  // namespace cow
