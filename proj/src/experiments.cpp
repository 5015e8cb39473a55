#include "cow/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cow/analytic.hpp"
#include "cow/channel.hpp"
#include "cow/rng.hpp"
#include "cow/selection.hpp"
#include "cow/version.hpp"

namespace cow {

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::BsCoverageRadius: return "bs_coverage_radius";
        case SweepVariable::UserCount: return "user_count";
        case SweepVariable::D2dMax: return "d2d_max";
        case SweepVariable::BsHeight: return "bs_height";
        case SweepVariable::RingHalfWidth: return "ring_half_width";
    }
    throw std::logic_error("unreachable");
}

SweepVariable sweep_variable_from_name(const std::string& name) {
    for (SweepVariable v :
         {SweepVariable::BsCoverageRadius, SweepVariable::UserCount, SweepVariable::D2dMax,
          SweepVariable::BsHeight, SweepVariable::RingHalfWidth}) {
        if (sweep_variable_name(v) == name) return v;
    }
    throw std::invalid_argument("unknown sweep variable: " + name);
}

void SweepSpec::validate() const {
    base.validate();
    if (trials < 1) throw std::invalid_argument("sweep trials must be at least 1");
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw std::invalid_argument("sweep values must be strictly increasing");
        }
    }
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
}

ScenarioConfig SweepSpec::config_at(double value) const {
    ScenarioConfig cfg = base;
    switch (variable) {
        case SweepVariable::BsCoverageRadius: cfg.bs_coverage_radius = value; break;
        case SweepVariable::UserCount: cfg.user_count = static_cast<int>(value); break;
        case SweepVariable::D2dMax: cfg.d2d_max = value; break;
        case SweepVariable::BsHeight: cfg.bs_height = value; break;
        case SweepVariable::RingHalfWidth: cfg.ring_half_width = value; break;
    }
    cfg.validate();
    return cfg;
}

namespace {

struct TrialRecord {
    bool success = false;
    double se_mode1 = 0.0;
    double se_mode2 = 0.0;
    double se_total = 0.0;
    double se_steered = 0.0;
    double se_baseline = 0.0;
};

TrialRecord run_trial(const ScenarioConfig& cfg, std::uint64_t seed) {
    TrialRecord rec;
    const UserField field =
        make_user_field(seed, cfg.user_count, Region::Disk, cfg.bs_coverage_radius);
    // Single outer pass: the statistical estimator works at the configured
    // epsilon, like the closed-form model it is compared against.
    const SelectionResult sel = select_pair(field, cfg, SelectOptions{1});
    if (sel.status != SelectionStatus::PairFound) return rec;
    rec.success = true;
    const ChannelRealization cow = build_channel(sel, cfg);
    rec.se_mode1 = cow.se_per_mode.size() > 0 ? cow.se_per_mode[0] : 0.0;
    rec.se_mode2 = cow.se_per_mode.size() > 1 ? cow.se_per_mode[1] : 0.0;
    rec.se_total = cow.se_total;
    rec.se_steered = cow.se_total_steered;
    rec.se_baseline = build_fixed_uca_baseline(field, cfg).se_total;
    return rec;
}

double fmt_safe_mean(double sum, long count) {
    return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult result;
    result.spec = spec;

    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        const ScenarioConfig cfg = spec.config_at(spec.values[p]);
        std::vector<TrialRecord> records(spec.trials);

        const int workers = std::min(spec.workers, spec.trials);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                try {
                    for (int t = w; t < spec.trials; t += workers) {
                        records[t] = run_trial(cfg, derive_seed(spec.master_seed, p, t));
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }

        SweepPoint point;
        point.value = spec.values[p];
        long successes = 0;
        double se1 = 0.0, se2 = 0.0, se_tot = 0.0, se_st = 0.0, se_base = 0.0;
        for (const TrialRecord& rec : records) {  // index-ordered reduction
            if (!rec.success) continue;
            ++successes;
            se1 += rec.se_mode1;
            se2 += rec.se_mode2;
            se_tot += rec.se_total;
            se_st += rec.se_steered;
            se_base += rec.se_baseline;
        }
        point.p_cow_statistical = static_cast<double>(successes) / spec.trials;
        point.mc_stderr = std::sqrt(point.p_cow_statistical *
                                    (1.0 - point.p_cow_statistical) / spec.trials);
        const FormationProbabilityBreakdown analytic = formation_probability(cfg);
        point.p_cow_analytic_user = analytic.p_cow_per_user;
        point.p_cow_analytic_pairs = analytic.p_cow_per_pair;
        point.mean_selected_cu_count = 2.0 * point.p_cow_statistical;
        point.mean_se_mode1 = fmt_safe_mean(se1, successes);
        point.mean_se_mode2 = fmt_safe_mean(se2, successes);
        point.mean_se_total = fmt_safe_mean(se_tot, successes);
        point.mean_se_steered = fmt_safe_mean(se_st, successes);
        point.mean_se_fixed_baseline = fmt_safe_mean(se_base, successes);
        result.points.push_back(point);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::string pcow_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "sweep_var,p_cow_analytic_K,p_cow_analytic_pairs,p_cow_montecarlo,mc_stderr\n";
    for (const SweepPoint& p : result.points) {
        out << fmt(p.value) << ',' << fmt(p.p_cow_analytic_user) << ','
            << fmt(p.p_cow_analytic_pairs) << ',' << fmt(p.p_cow_statistical) << ','
            << fmt(p.mc_stderr) << '\n';
    }
    return out.str();
}

std::string se_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "sweep_var,se_mode1,se_mode2,se_total,se_total_steered,se_fixed_uca_baseline\n";
    for (const SweepPoint& p : result.points) {
        out << fmt(p.value) << ',' << fmt(p.mean_se_mode1) << ',' << fmt(p.mean_se_mode2)
            << ',' << fmt(p.mean_se_total) << ',' << fmt(p.mean_se_steered) << ','
            << fmt(p.mean_se_fixed_baseline) << '\n';
    }
    return out.str();
}

std::string cu_count_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "sweep_var,mean_selected_cu_count,p_cow_montecarlo,mc_stderr\n";
    for (const SweepPoint& p : result.points) {
        out << fmt(p.value) << ',' << fmt(p.mean_selected_cu_count) << ','
            << fmt(p.p_cow_statistical) << ',' << fmt(p.mc_stderr) << '\n';
    }
    return out.str();
}

std::string run_manifest_json(const SweepResult& result) {
    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(result.spec.base));
    doc["run"]["sweep_variable"] = sweep_variable_name(result.spec.variable);
    doc["run"]["values"] = result.spec.values;
    doc["run"]["trials"] = result.spec.trials;
    doc["run"]["master_seed"] = result.spec.master_seed;
    doc["run"]["workers"] = result.spec.workers;
    doc["run"]["build"] = kBuildId;
    doc["run"]["wall_seconds"] = result.wall_seconds;
    nlohmann::json table = nlohmann::json::array();
    for (const SweepPoint& p : result.points) {
        table.push_back({{"value", p.value},
                         {"p_cow_montecarlo", p.p_cow_statistical},
                         {"deviation_exponent_K",
                          std::abs(p.p_cow_analytic_user - p.p_cow_statistical)},
                         {"deviation_exponent_pairs",
                          std::abs(p.p_cow_analytic_pairs - p.p_cow_statistical)}});
    }
    doc["run"]["analytic_deviation_table"] = table;
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("atomic rename failed: " + path);
    }
}

}  // namespace cow
