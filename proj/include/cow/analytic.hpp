#pragma once

#include "cow/scenario.hpp"

namespace cow {

/// Probability that one user falls in the ring [r_s - eps, r_s + eps] of a
/// uniform disk of radius r_bs.
double ring_probability(double r_s, double eps, double r_bs);

/// Closed-form minimum pair distance D_min(r_s): the unique D >= 0 with
/// D = 2 * feasible_radius(sqrt(H^2 + r_s^2 - D^2/4)).
double min_pair_distance(double r_s, double bs_height, double lambda, int ell);

/// Smallest search radius with a feasible chord; equals feasible_radius(H).
double min_search_radius(double bs_height, double lambda, int ell);

/// Search radius where D_min reaches d_max; no chord is feasible beyond it.
double vanish_radius(double d_max, double bs_height, double lambda, int ell);

struct AngleWindow {
    double theta_min = 0.0;
    double theta_max = 0.0;
};

/// Central-angle window corresponding to chords in [D_min(r_s), D_max];
/// theta_max clamps to pi when D_max >= 2 * r_s.
AngleWindow angle_window(double r_s, const ScenarioConfig& cfg);

/// Piecewise probability that two users on the r_s ring satisfy the
/// chord-length window.
double distance_condition_probability(double r_s, const ScenarioConfig& cfg);

struct FormationProbabilityBreakdown {
    double r_min = 0.0;          // m
    double r_v = 0.0;            // m
    double r_max_search = 0.0;   // min(r_v, R_BS), m
    double p_c = 0.0;            // per-pair co-ring + distance probability
    double p_cow_per_user = 0.0; // 1 - (1 - p_c)^K
    double p_cow_per_pair = 0.0; // 1 - (1 - p_c)^(K(K-1)/2)
    double p_cow = 0.0;          // value under cfg.pairing_exponent_convention
};

/// Ring-sum evaluation of the formation probability pipeline.
FormationProbabilityBreakdown formation_probability(const ScenarioConfig& cfg);

}  // namespace cow
