#include "cow/selection.hpp"

#include <algorithm>
#include <cmath>

#include "cow/beam.hpp"
#include "cow/rng.hpp"

namespace cow {

UserField make_user_field(std::uint64_t seed, int count, Region region, double size) {
    if (count < 0) throw std::invalid_argument("user count must be nonnegative");
    if (size <= 0.0) throw std::invalid_argument("region size must be positive");
    UserField field;
    field.seed = seed;
    field.region = region;
    field.region_size = size;
    field.positions.reserve(count);
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        if (region == Region::Disk) {
            const double r = size * std::sqrt(rng.uniform());
            const double theta = rng.uniform(0.0, 2.0 * kPi);
            field.positions.push_back(make_polar(r, theta));
        } else {
            const double x = rng.uniform(-0.5 * size, 0.5 * size);
            const double y = rng.uniform(-0.5 * size, 0.5 * size);
            field.positions.push_back(make_polar(std::hypot(x, y), std::atan2(y, x)));
        }
    }
    return field;
}

std::vector<int> potential_users(const UserField& field, const SearchRing& ring) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(field.positions.size()); ++i) {
        const double r = field.positions[i].r;
        if (r >= ring.r_s - ring.epsilon && r <= ring.r_s + ring.epsilon) out.push_back(i);
    }
    return out;
}

namespace {

struct Candidate {
    bool found = false;
    int k1 = -1, k2 = -1;
    double chord = 0.0;
    double z_c = 0.0;
    double r_s = 0.0;

    bool better_than(const Candidate& other) const {
        if (!other.found) return true;
        if (chord != other.chord) return chord < other.chord;
        if (k1 != other.k1) return k1 < other.k1;
        return k2 < other.k2;
    }
};

}  // namespace

SelectionResult select_pair(const UserField& field, const ScenarioConfig& cfg,
                            const SelectOptions& opts) {
    cfg.validate();
    const double lam = cfg.wavelength();
    const int ell = cfg.max_abs_mode();
    const double r_bs = cfg.bs_coverage_radius;
    const int n = static_cast<int>(field.positions.size());

    // Users sorted by radius; ring membership becomes a window scan.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (field.positions[a].r != field.positions[b].r)
            return field.positions[a].r < field.positions[b].r;
        return a < b;
    });
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) radii[i] = field.positions[order[i]].r;

    SelectionResult result;
    double eps = cfg.ring_half_width;
    while (true) {
        result.iterations_outer += 1;
        Candidate best;
        for (long i = 1; (2 * i - 1) * eps <= r_bs - eps; ++i) {
            const double r_s = (2 * i - 1) * eps;
            result.iterations_inner += 1;
            const auto lo = std::lower_bound(radii.begin(), radii.end(), r_s - eps);
            const auto hi = std::upper_bound(radii.begin(), radii.end(), r_s + eps);
            const int first = static_cast<int>(lo - radii.begin());
            const int last = static_cast<int>(hi - radii.begin());
            if (last - first < 2) continue;
            for (int a = first; a < last; ++a) {
                for (int b = a + 1; b < last; ++b) {
                    int k1 = order[a], k2 = order[b];
                    if (k1 > k2) std::swap(k1, k2);
                    const PolarPoint& u = field.positions[k1];
                    const PolarPoint& v = field.positions[k2];
                    const double d = chord_distance(u, v);
                    if (d > cfg.d2d_max) continue;
                    const double mean_r = 0.5 * (u.r + v.r);
                    const double z_c = beam_axis_length(mean_r, d, cfg.bs_height);
                    if (d < 2.0 * feasible_radius(z_c, lam, ell)) continue;
                    Candidate cand{true, k1, k2, d, z_c, r_s};
                    if (cand.better_than(best)) best = cand;
                }
            }
        }
        if (best.found) {
            result.status = SelectionStatus::PairFound;
            result.cu_indices = {best.k1, best.k2};
            result.ring = SearchRing{best.r_s, eps};
            result.chord = best.chord;
            result.z_c = best.z_c;
            result.waist_radius = waist_from_target_radius(0.5 * best.chord, best.z_c, lam, ell);
            return result;
        }
        if (opts.max_outer_iterations >= 0 &&
            result.iterations_outer >= opts.max_outer_iterations) {
            break;
        }
        eps *= 2.0;
        if (eps > r_bs) break;  // termination guard, the sweep cannot widen further
    }
    result.status = SelectionStatus::NoPair;
    return result;
}

std::pair<long, long> iteration_bound(const ScenarioConfig& cfg) {
    const double ratio = cfg.bs_coverage_radius / cfg.ring_half_width;
    const long inner = static_cast<long>(std::ceil(ratio / 2.0));
    const long outer = static_cast<long>(std::ceil(std::log2(1.0 + ratio)));
    return {inner, std::max(outer, 1L)};
}

}  // namespace cow
