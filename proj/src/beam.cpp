#include "cow/beam.hpp"

#include <cmath>
#include <stdexcept>

#include "cow/scenario.hpp"

namespace cow {

double Beam::rayleigh_range() const { return kPi * waist_radius * waist_radius / wavelength; }

double Beam::beam_radius(double z) const {
    const double zr = rayleigh_range();
    return waist_radius * std::sqrt(1.0 + (z / zr) * (z / zr));
}

double Beam::wave_number() const { return 2.0 * kPi / wavelength; }

void Beam::validate() const {
    if (mode == 0) throw std::invalid_argument("beam mode must be nonzero");
    if (radial_index < 0) throw std::invalid_argument("radial index must be nonnegative");
    if (waist_radius <= 0.0) throw std::invalid_argument("waist radius must be positive");
    if (wavelength <= 0.0) throw std::invalid_argument("wavelength must be positive");
}

double laguerre_polynomial(int p, int alpha, double x) {
    if (p < 0 || alpha < 0) {
        throw std::invalid_argument("laguerre_polynomial: p and alpha must be nonnegative");
    }
    if (p == 0) return 1.0;
    double lm2 = 1.0;               // L_0
    double lm1 = 1.0 + alpha - x;   // L_1
    for (int k = 2; k <= p; ++k) {
        const double lk = ((2.0 * k - 1.0 + alpha - x) * lm1 - (k - 1.0 + alpha) * lm2) / k;
        lm2 = lm1;
        lm1 = lk;
    }
    return lm1;
}

std::complex<double> lg_amplitude(const Beam& b, double r, double theta, double z) {
    b.validate();
    if (z < 0.0) throw std::domain_error("lg_amplitude: z must be nonnegative");
    const int p = b.radial_index;
    const int la = std::abs(b.mode);
    const double w = b.beam_radius(z);
    const double zr = b.rayleigh_range();

    // sqrt(2 p! / (pi w^2 (p+|l|)!)) in log domain so large |l| stays finite
    const double log_norm =
        0.5 * (std::log(2.0) - std::log(kPi) - 2.0 * std::log(w) + std::lgamma(p + 1.0) -
               std::lgamma(p + la + 1.0));
    const double x = 2.0 * r * r / (w * w);
    const double radial = laguerre_polynomial(p, la, x);
    double log_env = log_norm - r * r / (w * w);
    if (r > 0.0) log_env += la * std::log(r * std::sqrt(2.0) / w);
    double magnitude = (r == 0.0 && la > 0) ? 0.0 : std::exp(log_env) * radial;

    const double curvature = b.wave_number() * r * r * z / (2.0 * (z * z + zr * zr));
    const double gouy = (2.0 * p + la + 1.0) * std::atan(z / zr);
    const double phase = b.mode * theta + curvature - gouy;
    return std::polar(magnitude, phase);
}

double lg_intensity(const Beam& b, double r, double z) {
    b.validate();
    if (b.radial_index != 0) {
        throw std::invalid_argument("lg_intensity is defined for radial index p = 0 only");
    }
    if (z < 0.0) throw std::domain_error("lg_intensity: z must be nonnegative");
    const int la = std::abs(b.mode);
    if (r == 0.0) return 0.0;
    const double w = b.beam_radius(z);
    const double log_i = std::log(2.0) - std::log(kPi) - 2.0 * std::log(w) -
                         std::lgamma(la + 1.0) +
                         2.0 * la * std::log(std::sqrt(2.0) * r / w) -
                         2.0 * r * r / (w * w);
    return std::exp(log_i);
}

double max_intensity_radius(const Beam& b, double z) {
    b.validate();
    if (z < 0.0) throw std::domain_error("max_intensity_radius: z must be nonnegative");
    return std::sqrt(std::abs(b.mode) / 2.0) * b.beam_radius(z);
}

double peak_intensity(const Beam& b, double z) {
    b.validate();
    const int la = std::abs(b.mode);
    const double w = b.beam_radius(z);
    const double log_u = std::log(2.0) + la * std::log(static_cast<double>(la)) - la -
                         std::log(kPi) - 2.0 * std::log(w) - std::lgamma(la + 1.0);
    return std::exp(log_u);
}

double feasible_radius(double z, double lambda, int ell) {
    if (z < 0.0) throw std::domain_error("feasible_radius: z must be nonnegative");
    if (lambda <= 0.0) throw std::invalid_argument("feasible_radius: lambda must be positive");
    if (ell == 0) throw std::invalid_argument("feasible_radius: ell must be nonzero");
    return std::sqrt(z * lambda * std::abs(ell) / kPi);
}

double waist_from_target_radius(double r_target, double z, double lambda, int ell) {
    if (ell == 0) throw std::invalid_argument("waist_from_target_radius: ell must be nonzero");
    const double la = std::abs(ell);
    const double a = r_target * r_target / la;
    const double radicand = a * a - z * z * lambda * lambda / (kPi * kPi);
    if (radicand < 0.0) {
        throw std::domain_error(
            "waist_from_target_radius: target radius below the feasible radius");
    }
    // Smaller quadratic root; at z = 0 it degenerates to 0, so take the
    // other root (the only nonzero waist with its ring at r_target there).
    const double u = a - std::sqrt(radicand);
    return u > 0.0 ? std::sqrt(u) : std::sqrt(a + std::sqrt(radicand));
}

}  // namespace cow
