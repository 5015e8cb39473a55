#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cow {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Planar user location around the BS ground projection.
struct PolarPoint {
    double r = 0.0;      // meters, >= 0
    double theta = 0.0;  // radians, normalized to [0, 2*pi)
};

double normalize_angle(double theta);
PolarPoint make_polar(double r, double theta);

/// Euclidean ground distance between two users.
double chord_distance(const PolarPoint& u, const PolarPoint& v);

/// Length of the beam axis from the UCA center to the midpoint of a chord
/// of length d on the circle of radius r_s, with BS height H.
/// Throws std::domain_error when r_s^2 + H^2 < d^2/4.
double beam_axis_length(double r_s, double d, double bs_height);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double deg_to_rad(double deg);

enum class PairingExponent {
    PerUser,  // exponent K
    PerPair,  // exponent K*(K-1)/2
};

struct ScenarioConfig {
    double frequency = 1.0e9;          // Hz
    double bs_height = 10.0;           // H, m
    double bs_coverage_radius = 100.0; // R_BS, m
    int user_count = 2000;             // K
    double d2d_max = 10.0;             // D_max, m
    double tx_power = 1.0;             // P, watts (config boundary takes dBm)
    double noise_power = 1.0e-12;      // sigma^2, watts (config boundary takes dBm)
    int uca_elements = 8;              // M
    double uca_radius = 0.5;           // R, m
    std::vector<int> mode_set = {1, 2};
    double ring_half_width = 0.5;      // epsilon_0, m
    double oblique_phi = 0.0;          // radians
    double oblique_psi = 0.0;          // radians
    PairingExponent pairing_exponent_convention = PairingExponent::PerUser;
    double fixed_uca_separation = 0.5; // baseline receive-antenna spacing, m

    double wavelength() const { return kSpeedOfLight / frequency; }
    double uca_central_angle() const { return 2.0 * kPi / uca_elements; }
    int max_abs_mode() const;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

/// Parses a JSON config document. Unknown keys are a hard error.
/// tx_power / noise_power are given in dBm, oblique angles either in
/// radians (oblique_phi) or degrees (oblique_phi_deg).
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_json(const ScenarioConfig& cfg);

/// Applies a "key=value" override on top of an existing config.
/// Throws std::invalid_argument for unknown keys or malformed values.
ScenarioConfig apply_override(const ScenarioConfig& cfg, const std::string& key,
                              const std::string& value);

}  // namespace cow
