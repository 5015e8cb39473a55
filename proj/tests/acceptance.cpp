// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles here are written independently of the library internals
// (quadrature, golden-section search, bisection, brute-force re-scan).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cow/analytic.hpp"
#include "cow/beam.hpp"
#include "cow/channel.hpp"
#include "cow/experiments.hpp"
#include "cow/rng.hpp"
#include "cow/scenario.hpp"
#include "cow/selection.hpp"

using namespace cow;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << index << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n" << std::flush;
    if (!ok) ++g_failures;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    while (b - a > 1e-13 * (1.0 + b)) {
        const double c = b - gr * (b - a);
        const double d = a + gr * (b - a);
        if (f(c) < f(d)) a = c; else b = d;
    }
    return 0.5 * (a + b);
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---- criterion 1 -----------------------------------------------------------

void criterion_1() {
    const double eps = feasible_region_epsilon(10.0, deg_to_rad(6.0), 0.0);
    report(1, "epsilon-expansion anchor 0.5226 at D_max 10 m, 6 degrees",
           std::abs(eps - 0.5226) <= 0.005, "got " + fmt(eps));
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_2() {
    Rng rng(2024);
    double worst = 0.0;
    int tested = 0;
    while (tested < 1000) {
        const int ell = 1 + static_cast<int>(rng.uniform() * 4.0);
        const double z = 300.0 * rng.uniform();
        const double lam = 0.03 + 0.57 * rng.uniform();
        const double r_t = feasible_radius(z, lam, ell) * (1.0 + 4.0 * rng.uniform());
        if (r_t <= 0.0) continue;
        ++tested;
        const double w0 = waist_from_target_radius(r_t, z, lam, ell);
        const Beam beam{ell, 0, w0, lam};
        const double back = max_intensity_radius(beam, z);
        worst = std::max(worst, std::abs(back - r_t) / r_t);
    }
    report(2, "waist inversion round-trips 1000 random beams within 1e-9",
           worst <= 1e-9, "worst relative error " + fmt(worst));
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_3() {
    bool ok = true;
    std::string detail;
    for (int ell : {1, 2, 3}) {
        const Beam b{ell, 0, 0.8, 0.3};
        const double z = 25.0;
        const double w = b.beam_radius(z);
        const double total = simpson(
            [&](double r) { return lg_intensity(b, r, z) * 2.0 * kPi * r; }, 0.0,
            14.0 * w, 40000);
        if (std::abs(total - 1.0) > 1e-6) {
            ok = false;
            detail = "mode " + std::to_string(ell) + " integral " + fmt(total);
        }
        const double found =
            golden_max([&](double r) { return lg_intensity(b, r, z); }, 1e-9, 6.0 * w);
        const double closed = max_intensity_radius(b, z);
        if (std::abs(found - closed) / closed > 1e-6) {
            ok = false;
            detail = "mode " + std::to_string(ell) + " maximizer " + fmt(found) + " vs " +
                     fmt(closed);
        }
    }
    report(3, "intensity normalization within 1e-6 and ring-radius maximizer agrees", ok,
           detail);
}

// ---- criterion 4 -----------------------------------------------------------

void criterion_4() {
    // Bisection on f(D) = D - 2*R_fea(z(D)), which is strictly increasing.
    const auto fixed_point = [](double r_s, double h, double lam, int ell) {
        const double s = h * h + r_s * r_s;
        double lo = 0.0, hi = 2.0 * std::sqrt(s);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double z = std::sqrt(std::max(0.0, s - 0.25 * mid * mid));
            if (mid - 2.0 * feasible_radius(z, lam, ell) < 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double worst = 0.0;
    for (double h : {1.0, 2.0, 5.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 80.0}) {
        for (int ri = 0; ri < 50; ++ri) {
            const double r_s = 0.5 + ri * 4.0;
            for (double lam : {0.05, 0.1, 0.3, 0.5, 0.75}) {
                for (int ell : {1, 2, 3, 4}) {
                    const double closed = min_pair_distance(r_s, h, lam, ell);
                    const double solved = fixed_point(r_s, h, lam, ell);
                    worst = std::max(worst, std::abs(closed - solved) / closed);
                }
            }
        }
    }
    // 10 * 50 * 5 * 4 = 10^4 cells, each bisected to machine precision; the
    // grid spans four decades of the radicand.
    report(4, "closed-form minimum pair distance matches the bisection fixed point",
           worst <= 1e-9, "worst relative error " + fmt(worst));
}

// ---- criterion 5 -----------------------------------------------------------

void criterion_5() {
    Rng rng(55);
    bool ok = true;
    std::string detail;
    for (int pt = 0; pt < 50 && ok; ++pt) {
        ScenarioConfig cfg;
        cfg.bs_height = 2.0 + 28.0 * rng.uniform();
        cfg.bs_coverage_radius = 80.0 + 320.0 * rng.uniform();
        cfg.d2d_max = 5.0 + 20.0 * rng.uniform();
        const double r_s = 0.5 + (cfg.bs_coverage_radius + 40.0) * rng.uniform();
        const double p = distance_condition_probability(r_s, cfg);

        const double lam = cfg.wavelength();
        const int ell = cfg.max_abs_mode();
        const int n = 1000000;
        Rng mc(derive_seed(55, pt, 0));
        long hits = 0;
        for (int i = 0; i < n; ++i) {
            double ang = mc.uniform(0.0, 2.0 * kPi);
            if (ang > kPi) ang = 2.0 * kPi - ang;
            const double d = 2.0 * r_s * std::sin(0.5 * ang);
            if (d > cfg.d2d_max) continue;
            const double z = beam_axis_length(r_s, d, cfg.bs_height);
            if (d >= 2.0 * feasible_radius(z, lam, ell)) ++hits;
        }
        double p_hat = static_cast<double>(hits) / n;
        // Outside the search band the model pins the probability to zero even
        // though the raw geometric event can still occur on the circle.
        const double r_min = min_search_radius(cfg.bs_height, lam, ell);
        const double r_cap = std::min(vanish_radius(cfg.d2d_max, cfg.bs_height, lam, ell),
                                      cfg.bs_coverage_radius);
        if (r_s < r_min || r_s > r_cap) p_hat = 0.0;
        const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
        if (std::abs(p_hat - p) > 3.0 * sigma) {
            ok = false;
            detail = "point " + std::to_string(pt) + ": closed " + fmt(p) + " vs MC " +
                     fmt(p_hat);
        }
    }
    report(5, "piecewise distance-condition probability matches 1e6-sample Monte Carlo",
           ok, detail);
}

// ---- criteria 6-8 share the sweep machinery --------------------------------

SweepResult sweep(SweepVariable var, std::vector<double> values, int trials,
                  const ScenarioConfig& base, std::uint64_t seed) {
    SweepSpec spec;
    spec.variable = var;
    spec.values = std::move(values);
    spec.trials = trials;
    spec.base = base;
    spec.master_seed = seed;
    spec.workers = 4;
    return run_sweep(spec);
}

void criterion_6() {
    ScenarioConfig base;  // f = 1 GHz, H = 10, D_max = 10, eps = 0.5, K = 2000
    const SweepResult res =
        sweep(SweepVariable::BsCoverageRadius, {100, 200, 300, 400, 500}, 2000, base, 6001);

    double dev_user = 0.0, dev_pairs = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const SweepPoint& p = res.points[i];
        dev_user = std::max(dev_user, std::abs(p.p_cow_analytic_user - p.p_cow_statistical));
        dev_pairs = std::max(dev_pairs,
                             std::abs(p.p_cow_analytic_pairs - p.p_cow_statistical));
        if (i > 0) {
            const SweepPoint& q = res.points[i - 1];
            if (p.p_cow_statistical > q.p_cow_statistical + 1e-12 ||
                p.p_cow_analytic_user > q.p_cow_analytic_user + 1e-12 ||
                p.p_cow_analytic_pairs > q.p_cow_analytic_pairs + 1e-12) {
                monotone = false;
            }
        }
    }
    const bool manifest_has_table =
        run_manifest_json(res).find("analytic_deviation_table") != std::string::npos;
    const bool ok = std::min(dev_user, dev_pairs) <= 0.10 && monotone && manifest_has_table;
    report(6, "formation probability: best exponent convention within 0.10 of Monte Carlo",
           ok, "max deviation K-exponent " + fmt(dev_user) + ", pair-exponent " +
                   fmt(dev_pairs) + (monotone ? "" : ", monotonicity violated"));
}

bool trend(const SweepResult& res, int sign, std::string& detail, const char* label) {
    for (std::size_t i = 1; i < res.points.size(); ++i) {
        const double prev = res.points[i - 1].p_cow_statistical;
        const double cur = res.points[i].p_cow_statistical;
        const double noise = 3.0 * std::hypot(res.points[i - 1].mc_stderr,
                                              res.points[i].mc_stderr);
        if (sign * (cur - prev) < -noise) {
            detail = std::string(label) + " violated at value " + fmt(res.points[i].value) +
                     ": " + fmt(prev) + " -> " + fmt(cur);
            return false;
        }
    }
    return true;
}

void criterion_7() {
    ScenarioConfig base;
    base.bs_coverage_radius = 400.0;  // away from the saturated regime
    std::string detail;
    bool ok = true;

    ok = ok && trend(sweep(SweepVariable::UserCount, {1000, 2000, 3000, 4000}, 1000, base,
                           7001),
                     +1, detail, "nondecreasing in K");
    ok = ok && trend(sweep(SweepVariable::D2dMax, {10, 15, 20, 25}, 1000, base, 7002), +1,
                     detail, "nondecreasing in D_max");
    ok = ok && trend(sweep(SweepVariable::RingHalfWidth, {0.05, 0.25, 0.5}, 1000, base,
                           7003),
                     +1, detail, "nondecreasing in epsilon");
    ok = ok && trend(sweep(SweepVariable::BsCoverageRadius, {200, 300, 400, 500}, 1000,
                           ScenarioConfig{}, 7004),
                     -1, detail, "nonincreasing in R_BS");
    ok = ok && trend(sweep(SweepVariable::BsHeight, {10, 20, 30, 40}, 1000, base, 7005), -1,
                     detail, "nonincreasing in H");
    report(7, "formation-probability trends in K, D_max, epsilon, R_BS, H", ok, detail);
}

void criterion_8() {
    ScenarioConfig base;  // P = 30 dBm, sigma^2 = -90 dBm, f = 1 GHz defaults
    std::string detail;
    bool ok = true;
    const auto check_se = [&](const SweepResult& res, const char* label) {
        double prev = 1e300;
        for (const SweepPoint& p : res.points) {
            if (p.p_cow_statistical < 0.2) continue;
            if (!(p.mean_se_total > p.mean_se_fixed_baseline)) {
                ok = false;
                detail = std::string(label) + " value " + fmt(p.value) + ": COW " +
                         fmt(p.mean_se_total) + " <= baseline " +
                         fmt(p.mean_se_fixed_baseline);
                return;
            }
            if (p.mean_se_total > prev + 1e-12) {
                ok = false;
                detail = std::string(label) + " mean SE not nonincreasing at value " +
                         fmt(p.value);
                return;
            }
            prev = p.mean_se_total;
        }
    };
    check_se(sweep(SweepVariable::BsCoverageRadius, {100, 200, 300}, 800, base, 8001),
             "R_BS sweep");
    if (ok) {
        check_se(sweep(SweepVariable::BsHeight, {10, 20, 30}, 800, base, 8002), "H sweep");
    }
    report(8, "cooperative scheme beats the fixed-UCA baseline in mean spectrum efficiency",
           ok, detail);
}

// ---- criterion 9 -----------------------------------------------------------

void criterion_9() {
    bool ok = true;
    std::string detail;

    const auto q = mux_matrix({1, 2}, {0.0, kPi});
    for (int i = 0; i < 2 && ok; ++i) {
        for (int j = 0; j < 2 && ok; ++j) {
            Complex g{0.0, 0.0};
            for (int k = 0; k < 2; ++k) g += q[i][k] * std::conj(q[j][k]);
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(g - Complex{want, 0.0}) > 1e-12) {
                ok = false;
                detail = "mux Gram deviates at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
            }
        }
    }

    Rng rng(99);
    for (int t = 0; t < 100 && ok; ++t) {
        const double g0 = 1e-6 + 2.0 * rng.uniform();
        const double g1 = 1e-6 + 2.0 * rng.uniform();
        const double total = 0.2 + 3.0 * rng.uniform();
        const double noise = 0.005 + rng.uniform();
        const auto wf = water_filling({g0, g1}, total, noise);
        if (std::abs(wf.power[0] + wf.power[1] - total) > 1e-12) {
            ok = false;
            detail = "power budget violated by " +
                     fmt(std::abs(wf.power[0] + wf.power[1] - total));
            break;
        }
        const auto se = spectrum_efficiency({g0, g1}, wf.power, noise);
        const double achieved = se[0] + se[1];
        for (int i = 0; i <= 1000; ++i) {
            const double p0 = total * i / 1000.0;
            const double grid = std::log2(1.0 + p0 * g0 / noise) +
                                std::log2(1.0 + (total - p0) * g1 / noise);
            if (grid > achieved + 1e-9) {
                ok = false;
                detail = "grid search beats water-filling: " + fmt(grid) + " > " +
                         fmt(achieved);
                break;
            }
        }
    }

    if (ok) {
        const RMat gain = {{0.07, 0.07}, {0.21, 0.21}};
        CMat cg(2, CVec(2));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) cg[i][j] = gain[i][j];
        const CVec a = steering_vector(rx_steering_phases(2, 4.0, 0.3, 0.0));
        const CVec b2 = steering_vector(tx_steering_phases(2, 0.5, 0.3, 0.0));
        for (int row = 0; row < 2 && ok; ++row) {
            const Complex steered = steered_effective_gain(q[row], a, cg, b2, q[row]);
            const Complex plain = effective_gain(row, gain, q);
            if (std::abs(steered - plain) > 1e-15) {
                ok = false;
                detail = "steered gain deviates by " + fmt(std::abs(steered - plain));
            }
        }
    }
    report(9, "multiplexing algebra: Gram identity, water-filling optimality, steering"
              " reduction",
           ok, detail);
}

// ---- criterion 10 ----------------------------------------------------------

struct OraclePick {
    int k1, k2;
    double chord;
};

std::optional<OraclePick> oracle_rescan(const UserField& field, const ScenarioConfig& cfg,
                                        double eps) {
    const double lam = cfg.wavelength();
    const int ell = cfg.max_abs_mode();
    std::optional<OraclePick> best;
    const int n = static_cast<int>(field.positions.size());
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = k1 + 1; k2 < n; ++k2) {
            const auto& u = field.positions[k1];
            const auto& v = field.positions[k2];
            bool on_ring = false;
            for (long i = 1; (2 * i - 1) * eps <= cfg.bs_coverage_radius - eps; ++i) {
                const double r_s = (2 * i - 1) * eps;
                if (u.r >= r_s - eps && u.r <= r_s + eps && v.r >= r_s - eps &&
                    v.r <= r_s + eps) {
                    on_ring = true;
                    break;
                }
            }
            if (!on_ring) continue;
            const double d = chord_distance(u, v);
            if (d > cfg.d2d_max) continue;
            const double z_c = beam_axis_length(0.5 * (u.r + v.r), d, cfg.bs_height);
            if (d < 2.0 * feasible_radius(z_c, lam, ell)) continue;
            if (!best || d < best->chord) best = OraclePick{k1, k2, d};
        }
    }
    return best;
}

void criterion_10() {
    bool ok = true;
    std::string detail;

    ScenarioConfig cfg;
    cfg.user_count = 100;
    for (std::uint64_t seed = 1; seed <= 1000 && ok; ++seed) {
        const auto field =
            make_user_field(seed, cfg.user_count, Region::Disk, cfg.bs_coverage_radius);
        const auto res = select_pair(field, cfg);
        const auto [inner_cap, outer_cap] = iteration_bound(cfg);
        if (res.iterations_inner > inner_cap * outer_cap ||
            res.iterations_outer > outer_cap) {
            ok = false;
            detail = "iteration bound exceeded at seed " + std::to_string(seed);
        }
    }

    ScenarioConfig small = cfg;
    small.user_count = 200;
    for (std::uint64_t seed = 1; seed <= 200 && ok; ++seed) {
        const auto field =
            make_user_field(seed, small.user_count, Region::Disk, small.bs_coverage_radius);
        const auto res = select_pair(field, small, SelectOptions{1});
        const auto pick = oracle_rescan(field, small, small.ring_half_width);
        if (pick.has_value() != (res.status == SelectionStatus::PairFound) ||
            (pick && std::abs(pick->chord - res.chord) > 1e-15)) {
            ok = false;
            detail = "re-scan oracle disagrees at seed " + std::to_string(seed);
        }
    }

    if (ok) {
        SweepSpec spec;
        spec.variable = SweepVariable::BsCoverageRadius;
        spec.values = {150.0, 250.0};
        spec.trials = 100;
        spec.base.user_count = 500;
        spec.master_seed = 10001;
        spec.workers = 1;
        const SweepResult one = run_sweep(spec);
        spec.workers = 8;
        const SweepResult eight = run_sweep(spec);
        if (pcow_csv(one) != pcow_csv(eight) || se_csv(one) != se_csv(eight) ||
            cu_count_csv(one) != cu_count_csv(eight)) {
            ok = false;
            detail = "CSV differs between 1 and 8 workers";
        }
    }
    report(10, "iteration bounds, exhaustive optimality oracle, worker-count determinism",
           ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criteria failed")
              << "\n";
    return g_failures == 0 ? 0 : 1;
}
