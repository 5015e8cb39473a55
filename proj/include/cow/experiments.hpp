#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cow/scenario.hpp"

namespace cow {

enum class SweepVariable { BsCoverageRadius, UserCount, D2dMax, BsHeight, RingHalfWidth };

std::string sweep_variable_name(SweepVariable v);
SweepVariable sweep_variable_from_name(const std::string& name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::BsCoverageRadius;
    std::vector<double> values;
    int trials = 2000;
    ScenarioConfig base;
    std::uint64_t master_seed = 1;
    int workers = 1;

    void validate() const;
    ScenarioConfig config_at(double value) const;
};

struct SweepPoint {
    double value = 0.0;
    double p_cow_statistical = 0.0;
    double mc_stderr = 0.0;
    double p_cow_analytic_user = 0.0;   // exponent K
    double p_cow_analytic_pairs = 0.0;  // exponent K(K-1)/2
    double mean_selected_cu_count = 0.0;
    // Means over successful trials; NaN when no trial succeeded.
    double mean_se_mode1 = 0.0;
    double mean_se_mode2 = 0.0;
    double mean_se_total = 0.0;
    double mean_se_steered = 0.0;
    double mean_se_fixed_baseline = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;
    double wall_seconds = 0.0;
};

/// Runs trials for every sweep value. Results are a pure function of the
/// spec (identical for any worker count): each trial draws its RNG stream
/// from hash(master_seed, point, trial) and aggregation is index-ordered.
/// The statistical formation probability is the success fraction of the
/// ring-sweep selection at the configured ring half-width (a single
/// outer pass, matching the fixed-epsilon probability model).
SweepResult run_sweep(const SweepSpec& spec);

std::string pcow_csv(const SweepResult& result);
std::string se_csv(const SweepResult& result);
std::string cu_count_csv(const SweepResult& result);
std::string run_manifest_json(const SweepResult& result);

/// Writes via a temp file and an atomic rename; no partial output on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cow
