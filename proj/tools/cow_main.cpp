#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cow/analytic.hpp"
#include "cow/beam.hpp"
#include "cow/channel.hpp"
#include "cow/experiments.hpp"
#include "cow/selection.hpp"
#include "cow/version.hpp"

namespace {

using namespace cow;

struct CommonOpts {
    std::string config_path;
    std::string output_dir;
    std::vector<std::string> overrides;
    std::uint64_t seed = 1;
    bool seed_given = false;
};

std::string default_output_dir() {
    const char* env = std::getenv("COW_OUTPUT_DIR");
    return env != nullptr ? env : ".";
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* c = cmd->add_option("-c,--config", opts.config_path, "JSON scenario config");
    if (config_required) c->required();
    cmd->add_option("-o,--output-dir", opts.output_dir, "output directory")
        ->default_val(default_output_dir());
    cmd->add_option("--set", opts.overrides, "config override key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "master RNG seed")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
}

ScenarioConfig resolve_config(const CommonOpts& opts) {
    ScenarioConfig cfg = load_config(opts.config_path);
    for (const std::string& kv : opts.overrides) {
        const auto pos = kv.find('=');
        if (pos == std::string::npos) {
            throw std::invalid_argument("override must be key=value: " + kv);
        }
        cfg = apply_override(cfg, kv.substr(0, pos), kv.substr(pos + 1));
    }
    return cfg;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    std::filesystem::create_directories(dir);
    return dir + "/" + name;
}

struct SweepCliOpts {
    CommonOpts common;
    std::string variable = "bs_coverage_radius";
    std::vector<double> values;
    int trials = 2000;
    int workers = 1;
};

void add_sweep(CLI::App* cmd, SweepCliOpts& opts) {
    add_common(cmd, opts.common);
    cmd->add_option("--variable", opts.variable,
                    "bs_coverage_radius|user_count|d2d_max|bs_height|ring_half_width");
    cmd->add_option("--values", opts.values, "sweep values, strictly increasing")
        ->required()
        ->delimiter(',');
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials per point");
    cmd->add_option("--workers", opts.workers, "worker threads");
}

SweepResult run_sweep_cli(const SweepCliOpts& opts) {
    SweepSpec spec;
    spec.base = resolve_config(opts.common);
    spec.variable = sweep_variable_from_name(opts.variable);
    spec.values = opts.values;
    spec.trials = opts.trials;
    spec.workers = opts.workers;
    spec.master_seed = opts.common.seed;
    return run_sweep(spec);
}

int cmd_demo(const CommonOpts& common, const std::string& region_name, double region_size) {
    ScenarioConfig cfg = resolve_config(common);
    const Region region = region_name == "square" ? Region::Square : Region::Disk;
    const double size = region_size > 0.0
                            ? region_size
                            : (region == Region::Disk ? cfg.bs_coverage_radius : 200.0);
    const UserField field = make_user_field(common.seed, cfg.user_count, region, size);
    const SelectionResult sel = select_pair(field, cfg);

    std::ostringstream csv;
    csv << "r_meters,theta_radians,role\n";
    std::vector<std::string> roles(field.positions.size(), "user");
    if (sel.status == SelectionStatus::PairFound) {
        for (int idx : potential_users(field, sel.ring)) roles[idx] = "PU";
        roles[sel.cu_indices[0]] = "CU";
        roles[sel.cu_indices[1]] = "CU";
    }
    csv.precision(12);
    for (std::size_t i = 0; i < field.positions.size(); ++i) {
        csv << field.positions[i].r << ',' << field.positions[i].theta << ',' << roles[i]
            << '\n';
    }
    write_file_atomic(join_path(common.output_dir, "demo_users.csv"), csv.str());

    std::ostringstream info;
    info << "{\n  \"config\": " << config_to_json(cfg) << ",\n  \"run\": {\"seed\": "
         << common.seed << ", \"region\": \"" << region_name << "\", \"build\": \""
         << kBuildId << "\", \"pair_found\": "
         << (sel.status == SelectionStatus::PairFound ? "true" : "false") << "}\n}\n";
    write_file_atomic(join_path(common.output_dir, "run_manifest.json"), info.str());

    if (sel.status == SelectionStatus::PairFound) {
        std::cout << "pair (" << sel.cu_indices[0] << ", " << sel.cu_indices[1]
                  << ") chord " << sel.chord << " m, ring r_s " << sel.ring.r_s
                  << " m, z_c " << sel.z_c << " m, waist " << sel.waist_radius << " m\n";
    } else {
        std::cout << "no pair found\n";
    }
    return 0;
}

int cmd_beam_profile(const std::string& out_dir, int mode, double waist, double lambda,
                     double z, double r_max, int points) {
    const Beam beam{mode, 0, waist, lambda};
    beam.validate();
    const double r_hi = r_max > 0.0 ? r_max : 3.0 * max_intensity_radius(beam, z);
    std::ostringstream csv;
    csv << "r_meters,intensity\n";
    csv.precision(12);
    for (int i = 0; i <= points; ++i) {
        const double r = r_hi * i / points;
        csv << r << ',' << lg_intensity(beam, r, z) << '\n';
    }
    write_file_atomic(join_path(out_dir, "beam_profile.csv"), csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative OAM wireless (COW) simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cow::kVersion));

    CommonOpts validate_opts;
    auto* validate = app.add_subcommand("validate-config", "parse and check a config");
    add_common(validate, validate_opts);

    CommonOpts demo_opts;
    std::string demo_region = "disk";
    double demo_region_size = 0.0;
    auto* demo = app.add_subcommand("demo", "one field, one selection, CSV of user roles");
    add_common(demo, demo_opts);
    demo->add_option("--region", demo_region, "disk|square")
        ->check(CLI::IsMember({"disk", "square"}));
    demo->add_option("--region-size", demo_region_size,
                     "disk radius or square side (default: config radius / 200 m)");

    SweepCliOpts pcow_opts, se_opts, cu_opts;
    auto* pcow = app.add_subcommand("pcow-sweep",
                                    "formation probability: analytic vs Monte Carlo");
    add_sweep(pcow, pcow_opts);
    auto* se = app.add_subcommand("se-sweep", "spectrum-efficiency sweep with baseline");
    add_sweep(se, se_opts);
    auto* cu = app.add_subcommand("cu-count-sweep", "mean selected-CU count sweep");
    add_sweep(cu, cu_opts);

    std::string bp_out = default_output_dir();
    int bp_mode = 1, bp_points = 200;
    double bp_waist = 0.5, bp_lambda = 0.3, bp_z = 50.0, bp_rmax = 0.0;
    auto* bp = app.add_subcommand("beam-profile", "radial intensity profile CSV");
    bp->add_option("-o,--output-dir", bp_out)->default_val(default_output_dir());
    bp->add_option("--mode", bp_mode, "OAM mode (nonzero)");
    bp->add_option("--waist", bp_waist, "waist radius, m");
    bp->add_option("--wavelength", bp_lambda, "wavelength, m");
    bp->add_option("--z", bp_z, "observation distance, m");
    bp->add_option("--r-max", bp_rmax, "profile extent, m (default: 3x ring radius)");
    bp->add_option("--points", bp_points, "sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*validate) {
            resolve_config(validate_opts).validate();
            std::cout << "config ok\n";
            return 0;
        }
        if (*demo) return cmd_demo(demo_opts, demo_region, demo_region_size);
        if (*bp) {
            return cmd_beam_profile(bp_out, bp_mode, bp_waist, bp_lambda, bp_z, bp_rmax,
                                    bp_points);
        }
        const SweepCliOpts* opts = *pcow ? &pcow_opts : (*se ? &se_opts : &cu_opts);
        const SweepResult result = run_sweep_cli(*opts);
        const std::string dir = opts->common.output_dir;
        if (*pcow) {
            write_file_atomic(join_path(dir, "pcow_sweep.csv"), pcow_csv(result));
        } else if (*se) {
            write_file_atomic(join_path(dir, "se_sweep.csv"), se_csv(result));
        } else {
            write_file_atomic(join_path(dir, "cu_count_sweep.csv"), cu_count_csv(result));
        }
        write_file_atomic(join_path(dir, "run_manifest.json"), run_manifest_json(result));
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
