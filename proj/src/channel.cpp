#include "cow/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cow {

namespace {

constexpr Complex kOne{1.0, 0.0};

Complex dot_conj(const CVec& x, const CVec& y) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
    return acc;
}

/// (row .* a) * G * (b .* conj(q_col)), the one sandwich kernel used by both
/// the plain and the steered effective gain.
Complex sandwich(const CVec& row, const CVec& a, const CMat& gain, const CVec& b,
                 const CVec& q_col) {
    if (row.size() != a.size() || row.size() != gain.size()) {
        throw std::invalid_argument("steered gain: row dimension mismatch");
    }
    if (gain.empty() || b.size() != q_col.size() || b.size() != gain.front().size()) {
        throw std::invalid_argument("steered gain: column dimension mismatch");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < row.size(); ++k) {
        Complex inner{0.0, 0.0};
        for (std::size_t m = 0; m < b.size(); ++m) {
            inner += gain[k][m] * (b[m] * std::conj(q_col[m]));
        }
        acc += (row[k] * a[k]) * inner;
    }
    return acc;
}

CMat to_complex(const RMat& g) {
    CMat out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        out[i].assign(g[i].begin(), g[i].end());
    }
    return out;
}

}  // namespace

double gain_element(int ell, double r_k, double z_c, const Beam& beam) {
    Beam b = beam;
    b.mode = ell;
    return lg_intensity(b, r_k, z_c);
}

CMat mux_matrix(const std::vector<int>& modes, const std::vector<double>& angles) {
    if (modes.size() != angles.size() || modes.empty()) {
        throw std::invalid_argument("mux_matrix: need one receive angle per mode");
    }
    const std::size_t n = modes.size();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    CMat q(n, CVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            q[i][k] = std::polar(norm, modes[i] * angles[k]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(dot_conj(q[i], q[j])) > 1e-9) {
                throw std::invalid_argument(
                    "mux_matrix: mode set is not orthogonal at these receive angles");
            }
        }
    }
    return q;
}

Complex effective_gain(std::size_t row, const RMat& gain_matrix, const CMat& mux) {
    if (row >= mux.size()) throw std::invalid_argument("effective_gain: row out of range");
    const CVec& q = mux[row];
    const CVec ones(q.size(), kOne);
    return sandwich(q, ones, to_complex(gain_matrix), ones, q);
}

std::vector<double> mode_eigenvalues(const RMat& gain_matrix, const CMat& mux) {
    if (mux.size() != 2) {
        throw std::invalid_argument("mode_eigenvalues: implemented for two modes");
    }
    const CMat g = to_complex(gain_matrix);
    const CVec ones(mux.front().size(), kOne);
    Complex s[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) s[i][j] = sandwich(mux[i], ones, g, ones, mux[j]);
    }
    // Hermitian part, then the 2x2 closed-form spectrum.
    const double h11 = s[0][0].real();
    const double h22 = s[1][1].real();
    const Complex h12 = 0.5 * (s[0][1] + std::conj(s[1][0]));
    const double mid = 0.5 * (h11 + h22);
    const double disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + std::norm(h12));
    return {mid + disc, mid - disc};
}

WaterFillingResult water_filling(const std::vector<double>& gains2, double total_power,
                                 double noise_power) {
    if (total_power <= 0.0 || noise_power <= 0.0) {
        throw std::invalid_argument("water_filling: power and noise must be positive");
    }
    WaterFillingResult out;
    out.power.assign(gains2.size(), 0.0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < gains2.size(); ++i) {
        if (gains2[i] < 0.0) throw std::invalid_argument("water_filling: negative gain");
        if (gains2[i] > 0.0) active.push_back(i);
    }
    if (active.empty()) {
        out.degenerate = true;
        return out;
    }
    // KKT water level with iterative removal of channels driven negative.
    while (true) {
        double floor_sum = 0.0;
        for (std::size_t i : active) floor_sum += noise_power / gains2[i];
        const double mu = (total_power + floor_sum) / active.size();
        std::vector<std::size_t> keep;
        for (std::size_t i : active) {
            if (mu - noise_power / gains2[i] > 0.0) keep.push_back(i);
        }
        if (keep.size() == active.size()) {
            for (std::size_t i : active) out.power[i] = mu - noise_power / gains2[i];
            break;
        }
        active.swap(keep);
    }
    return out;
}

std::vector<double> spectrum_efficiency(const std::vector<double>& gains2,
                                        const std::vector<double>& power,
                                        double noise_power) {
    if (gains2.size() != power.size()) {
        throw std::invalid_argument("spectrum_efficiency: size mismatch");
    }
    std::vector<double> se(gains2.size());
    for (std::size_t i = 0; i < se.size(); ++i) {
        se[i] = std::log2(1.0 + power[i] * gains2[i] / noise_power);
    }
    return se;
}

std::vector<double> tx_steering_phases(int elements, double uca_radius, double lambda,
                                       double psi) {
    std::vector<double> v(elements);
    for (int m = 0; m < elements; ++m) {
        v[m] = (2.0 * kPi * uca_radius / lambda) *
               std::cos(2.0 * kPi * m / elements - kPi / 2.0) * std::sin(psi);
    }
    return v;
}

std::vector<double> rx_steering_phases(int receive_count, double r_max, double lambda,
                                       double phi) {
    std::vector<double> t(receive_count);
    for (int k = 0; k < receive_count; ++k) {
        t[k] = (2.0 * kPi * r_max / lambda) *
               std::cos(2.0 * kPi * k / receive_count + kPi / 2.0) * std::sin(phi);
    }
    return t;
}

CVec steering_vector(const std::vector<double>& phases) {
    CVec v(phases.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(1.0, -phases[i]);
    return v;
}

Complex steered_effective_gain(const CVec& q_rx, const CVec& a, const CMat& gain,
                               const CVec& b, const CVec& q_col) {
    return sandwich(q_rx, a, gain, b, q_col);
}

double feasible_region_epsilon(double d_max, double phi, double psi) {
    if (phi + psi < 0.0 || phi + psi > kPi / 2.0) {
        throw std::domain_error("feasible_region_epsilon: phi + psi must lie in [0, pi/2]");
    }
    return 0.5 * d_max * std::sin(phi + psi);
}

CMat los_channel(const std::vector<std::array<double, 3>>& rx,
                 const std::vector<std::array<double, 3>>& tx, double lambda) {
    CMat h(rx.size(), CVec(tx.size()));
    for (std::size_t k = 0; k < rx.size(); ++k) {
        for (std::size_t m = 0; m < tx.size(); ++m) {
            const double dx = rx[k][0] - tx[m][0];
            const double dy = rx[k][1] - tx[m][1];
            const double dz = rx[k][2] - tx[m][2];
            const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
            h[k][m] = std::polar(lambda / (4.0 * kPi * d), -2.0 * kPi * d / lambda);
        }
    }
    return h;
}

AxisFrameGeometry axis_frame_geometry(int elements, double uca_radius, double z_c,
                                      double r_off, double psi) {
    AxisFrameGeometry geo;
    geo.tx_elements.reserve(elements);
    for (int m = 0; m < elements; ++m) {
        const double alpha = 2.0 * kPi * m / elements;
        const double x = uca_radius * std::cos(alpha);
        const double y = uca_radius * std::sin(alpha);
        // UCA tilted by psi about the local x axis.
        geo.tx_elements.push_back({x, y * std::cos(psi), y * std::sin(psi)});
    }
    // Receive pair on the transverse ring at angles pi/2 and 3*pi/2.
    geo.rx_points.push_back({0.0, r_off, z_c});
    geo.rx_points.push_back({0.0, -r_off, z_c});
    return geo;
}

CVec tx_mode_vector(int ell, int elements) {
    CVec q(elements);
    const double norm = 1.0 / std::sqrt(static_cast<double>(elements));
    for (int m = 0; m < elements; ++m) {
        q[m] = std::polar(norm, ell * 2.0 * kPi * m / elements);
    }
    return q;
}

namespace {

ChannelRealization realize(const std::vector<int>& modes, double r_off, double z_c,
                           double waist, const ScenarioConfig& cfg) {
    if (modes.size() != 2) {
        throw std::invalid_argument("channel realization needs exactly two modes");
    }
    const double lam = cfg.wavelength();
    ChannelRealization ch;
    ch.modes = modes;
    ch.cu_radii = {r_off, r_off};
    ch.z_c = z_c;

    const Beam base{modes.front(), 0, waist, lam};
    ch.gain_matrix.assign(modes.size(), std::vector<double>(2));
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double g = gain_element(modes[i], r_off, z_c, base);
        ch.gain_matrix[i] = {g, g};
    }
    ch.mux = mux_matrix(modes, {0.0, kPi});
    ch.eigenvalues = mode_eigenvalues(ch.gain_matrix, ch.mux);
    std::vector<double> gains2;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        ch.effective_gains.push_back(effective_gain(i, ch.gain_matrix, ch.mux));
        gains2.push_back(std::norm(ch.effective_gains.back()));
    }
    ch.power_alloc = water_filling(gains2, cfg.tx_power, cfg.noise_power).power;
    ch.se_per_mode = spectrum_efficiency(gains2, ch.power_alloc, cfg.noise_power);
    ch.se_total = std::accumulate(ch.se_per_mode.begin(), ch.se_per_mode.end(), 0.0);

    // Antenna-domain model with beam-steering compensation for the
    // configured oblique angles.
    const auto geo = axis_frame_geometry(cfg.uca_elements, cfg.uca_radius, z_c, r_off,
                                         cfg.oblique_psi);
    const CMat h = los_channel(geo.rx_points, geo.tx_elements, lam);
    ch.steering_tx =
        steering_vector(tx_steering_phases(cfg.uca_elements, cfg.uca_radius, lam,
                                           cfg.oblique_psi));
    ch.steering_rx = steering_vector(rx_steering_phases(2, r_off, lam, cfg.oblique_phi));
    const CMat q_rx = mux_matrix(modes, {kPi / 2.0, 3.0 * kPi / 2.0});
    std::vector<double> steered2;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const CVec q_tx = tx_mode_vector(modes[i], cfg.uca_elements);
        ch.steered_gains.push_back(
            steered_effective_gain(q_rx[i], ch.steering_rx, h, ch.steering_tx, q_tx));
        steered2.push_back(std::norm(ch.steered_gains.back()));
    }
    const auto wf = water_filling(steered2, cfg.tx_power, cfg.noise_power);
    const auto se_steered = spectrum_efficiency(steered2, wf.power, cfg.noise_power);
    ch.se_total_steered = std::accumulate(se_steered.begin(), se_steered.end(), 0.0);
    return ch;
}

}  // namespace

ChannelRealization build_channel(const SelectionResult& sel, const ScenarioConfig& cfg) {
    if (sel.status != SelectionStatus::PairFound) {
        throw std::invalid_argument("build_channel: selection did not find a pair");
    }
    return realize(cfg.mode_set, 0.5 * sel.chord, sel.z_c, sel.waist_radius, cfg);
}

ChannelRealization build_fixed_uca_baseline(const UserField& field,
                                            const ScenarioConfig& cfg) {
    if (field.positions.empty()) {
        throw std::invalid_argument("fixed-UCA baseline: empty user field");
    }
    int nearest = 0;
    for (int i = 1; i < static_cast<int>(field.positions.size()); ++i) {
        if (field.positions[i].r < field.positions[nearest].r) nearest = i;
    }
    const double r_u = field.positions[nearest].r;
    const double sep = cfg.fixed_uca_separation;
    const double lam = cfg.wavelength();
    const double radicand = r_u * r_u + cfg.bs_height * cfg.bs_height - 0.25 * sep * sep;
    double z_b, waist;
    if (radicand > 0.0) {
        z_b = std::sqrt(radicand);
        // Feasibility-boundary waist: the tightest ring the BS can form at z_b.
        waist = std::sqrt(z_b * lam / kPi);
    } else {
        z_b = 0.0;
        waist = 0.5 * sep * std::sqrt(2.0 / cfg.max_abs_mode());
    }
    return realize(cfg.mode_set, 0.5 * sep, z_b, waist, cfg);
}

}  // namespace cow
