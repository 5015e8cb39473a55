#pragma once

#include <array>
#include <complex>
#include <vector>

#include "cow/beam.hpp"
#include "cow/scenario.hpp"
#include "cow/selection.hpp"

namespace cow {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using CMat = std::vector<CVec>;   // row-major
using RMat = std::vector<std::vector<double>>;

/// Mode-domain channel gain: ring intensity of mode ell at transverse
/// offset r_k, observed at distance z_c.
double gain_element(int ell, double r_k, double z_c, const Beam& beam);

/// Rows q(ell)_k = exp(i*ell*phi_k)/sqrt(K_c) sampling the mode phases at
/// the receive azimuths. Throws std::invalid_argument when the rows are not
/// orthonormal (mode spacing incompatible with the sampling arc).
CMat mux_matrix(const std::vector<int>& modes, const std::vector<double>& angles);

/// Effective gain of the mode at `row`: q * G * q^H.
Complex effective_gain(std::size_t row, const RMat& gain_matrix, const CMat& mux);

/// Diagnostic eigenvalues of the Hermitian part of Q*G*Q^H.
std::vector<double> mode_eigenvalues(const RMat& gain_matrix, const CMat& mux);

struct WaterFillingResult {
    std::vector<double> power;  // watts per channel, sums to total
    bool degenerate = false;    // all gains were zero
};

/// Water-filling over parallel channels with squared gains `gains2`.
WaterFillingResult water_filling(const std::vector<double>& gains2, double total_power,
                                 double noise_power);

/// log2(1 + p*g2/sigma2) per channel.
std::vector<double> spectrum_efficiency(const std::vector<double>& gains2,
                                        const std::vector<double>& power, double noise_power);

/// Transmit steering phases V_m for a UCA of M elements with radius R.
std::vector<double> tx_steering_phases(int elements, double uca_radius, double lambda,
                                       double psi);
/// Receive steering phases T_k for K_c cooperative receive points on the
/// r_max ring.
std::vector<double> rx_steering_phases(int receive_count, double r_max, double lambda,
                                       double phi);
/// Unit-modulus steering vectors exp(-i*phase).
CVec steering_vector(const std::vector<double>& phases);

/// Steered sandwich (q_rx .* a) * G * (b .* q_col^H). With all-ones a and b
/// and q_col == q_rx this reduces exactly to effective_gain.
Complex steered_effective_gain(const CVec& q_rx, const CVec& a, const CMat& gain,
                               const CVec& b, const CVec& q_col);

/// Ring half-width expansion available from beam steering,
/// d_max * sin(phi + psi) / 2.
double feasible_region_epsilon(double d_max, double phi, double psi);

/// Free-space LoS channel between explicit 3D points:
/// h = lambda/(4*pi*d) * exp(-i*2*pi*d/lambda).
CMat los_channel(const std::vector<std::array<double, 3>>& rx,
                 const std::vector<std::array<double, 3>>& tx, double lambda);

/// Antenna-domain geometry of one COW unit in the beam-axis frame. The UCA
/// normal is tilted by psi, the receive pair lies on the r_off ring.
struct AxisFrameGeometry {
    std::vector<std::array<double, 3>> tx_elements;
    std::vector<std::array<double, 3>> rx_points;
};
AxisFrameGeometry axis_frame_geometry(int elements, double uca_radius, double z_c,
                                      double r_off, double psi);

/// Spiral-phase synthesis weights for the transmit UCA.
CVec tx_mode_vector(int ell, int elements);

struct ChannelRealization {
    std::vector<int> modes;
    std::array<double, 2> cu_radii = {0.0, 0.0};  // transverse offsets from the axis
    double z_c = 0.0;
    RMat gain_matrix;                 // L x K_c, intensity-valued
    CMat mux;                         // L rows of length K_c
    std::vector<double> eigenvalues;  // beta_l diagnostics
    CVec effective_gains;             // g_de(l)
    CVec steered_gains;               // g'_de(l), antenna-domain with compensation
    std::vector<double> power_alloc;  // watts, from water-filling on |g_de|^2
    CVec steering_tx;                 // b
    CVec steering_rx;                 // a
    std::vector<double> se_per_mode;  // bits/s/Hz
    double se_total = 0.0;
    double se_total_steered = 0.0;
};

/// Builds the full mode-domain + antenna-domain realization for a selected
/// CU pair.
ChannelRealization build_channel(const SelectionResult& sel, const ScenarioConfig& cfg);

/// Fixed-UCA baseline: two receive antennas at a fixed separation carried by
/// the user nearest to the BS, with the waist at the feasibility boundary.
ChannelRealization build_fixed_uca_baseline(const UserField& field,
                                            const ScenarioConfig& cfg);

}  // namespace cow
