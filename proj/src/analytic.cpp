#include "cow/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "cow/beam.hpp"

namespace cow {

double ring_probability(double r_s, double eps, double r_bs) {
    if (!(eps > 0.0 && eps <= r_s && r_s <= r_bs - eps)) {
        throw std::domain_error("ring_probability: ring must lie inside the coverage disk");
    }
    return 4.0 * r_s * eps / (r_bs * r_bs);
}

double min_pair_distance(double r_s, double bs_height, double lambda, int ell) {
    if (r_s < 0.0) throw std::domain_error("min_pair_distance: r_s must be nonnegative");
    const double a = lambda * std::abs(ell) / kPi;
    const double s = bs_height * bs_height + r_s * r_s;
    return std::sqrt(2.0 * a * (std::sqrt(a * a + 4.0 * s) - a));
}

double min_search_radius(double bs_height, double lambda, int ell) {
    return feasible_radius(bs_height, lambda, ell);
}

double vanish_radius(double d_max, double bs_height, double lambda, int ell) {
    const double la = std::abs(ell);
    const double radicand = kPi * kPi * std::pow(d_max, 4) / (16.0 * lambda * lambda * la * la) +
                            0.25 * d_max * d_max - bs_height * bs_height;
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

namespace {

double chord_angle(double chord, double r_s) {
    // Central angle subtending a chord on the r_s circle; pi when the chord
    // reaches or exceeds the diameter.
    if (chord >= 2.0 * r_s) return kPi;
    const double c = (2.0 * r_s * r_s - chord * chord) / (2.0 * r_s * r_s);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

AngleWindow angle_window(double r_s, const ScenarioConfig& cfg) {
    if (r_s <= 0.0) throw std::domain_error("angle_window: r_s must be positive");
    const double d_min = min_pair_distance(r_s, cfg.bs_height, cfg.wavelength(),
                                           cfg.max_abs_mode());
    return AngleWindow{chord_angle(d_min, r_s), chord_angle(cfg.d2d_max, r_s)};
}

double distance_condition_probability(double r_s, const ScenarioConfig& cfg) {
    const double lam = cfg.wavelength();
    const int ell = cfg.max_abs_mode();
    if (r_s <= 0.0) return 0.0;
    const double r_min = min_search_radius(cfg.bs_height, lam, ell);
    const double r_max = std::min(vanish_radius(cfg.d2d_max, cfg.bs_height, lam, ell),
                                  cfg.bs_coverage_radius);
    if (r_s < r_min || r_s > r_max) return 0.0;
    const AngleWindow win = angle_window(r_s, cfg);
    return std::max(0.0, (win.theta_max - win.theta_min) / kPi);
}

FormationProbabilityBreakdown formation_probability(const ScenarioConfig& cfg) {
    cfg.validate();
    FormationProbabilityBreakdown out;
    const double lam = cfg.wavelength();
    const int ell = cfg.max_abs_mode();
    out.r_min = min_search_radius(cfg.bs_height, lam, ell);
    out.r_v = vanish_radius(cfg.d2d_max, cfg.bs_height, lam, ell);
    out.r_max_search = std::min(out.r_v, cfg.bs_coverage_radius);

    // Midpoint rings (2i-1)*eps of width 2*eps tile the coverage disk; the
    // integral of P_s * P_d becomes a sum over disjoint rings.
    // Counted loop: the strict-domain ring_probability would reject the last
    // ring when (2i-1)*eps lands an ulp above r_bs - eps.
    const double eps = cfg.ring_half_width;
    const double r_bs = cfg.bs_coverage_radius;
    const long n_rings = static_cast<long>(std::floor(r_bs / (2.0 * eps) + 1e-9));
    double p_c = 0.0;
    for (long i = 1; i <= n_rings; ++i) {
        const double r_s = (2 * i - 1) * eps;
        const double p_r = 4.0 * r_s * eps / (r_bs * r_bs);
        p_c += p_r * p_r * distance_condition_probability(r_s, cfg);
    }
    out.p_c = std::clamp(p_c, 0.0, 1.0);

    const double k = cfg.user_count;
    out.p_cow_per_user = 1.0 - std::pow(1.0 - out.p_c, k);
    out.p_cow_per_pair = 1.0 - std::pow(1.0 - out.p_c, k * (k - 1.0) / 2.0);
    out.p_cow = cfg.pairing_exponent_convention == PairingExponent::PerUser
                    ? out.p_cow_per_user
                    : out.p_cow_per_pair;
    return out;
}

}  // namespace cow
