#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cow/analytic.hpp"
#include "cow/beam.hpp"
#include "cow/channel.hpp"
#include "cow/experiments.hpp"
#include "cow/scenario.hpp"
#include "cow/selection.hpp"
#include "cow/version.hpp"

namespace py = pybind11;
using namespace cow;

PYBIND11_MODULE(_cowsim, m) {
    m.doc() = "cooperative OAM wireless (COW) simulation core";
    m.attr("__version__") = kVersion;

    py::class_<PolarPoint>(m, "PolarPoint")
        .def(py::init([](double r, double theta) { return make_polar(r, theta); }),
             py::arg("r"), py::arg("theta"))
        .def_readonly("r", &PolarPoint::r)
        .def_readonly("theta", &PolarPoint::theta);

    py::enum_<PairingExponent>(m, "PairingExponent")
        .value("PER_USER", PairingExponent::PerUser)
        .value("PER_PAIR", PairingExponent::PerPair);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("frequency", &ScenarioConfig::frequency)
        .def_readwrite("bs_height", &ScenarioConfig::bs_height)
        .def_readwrite("bs_coverage_radius", &ScenarioConfig::bs_coverage_radius)
        .def_readwrite("user_count", &ScenarioConfig::user_count)
        .def_readwrite("d2d_max", &ScenarioConfig::d2d_max)
        .def_readwrite("tx_power", &ScenarioConfig::tx_power)
        .def_readwrite("noise_power", &ScenarioConfig::noise_power)
        .def_readwrite("uca_elements", &ScenarioConfig::uca_elements)
        .def_readwrite("uca_radius", &ScenarioConfig::uca_radius)
        .def_readwrite("mode_set", &ScenarioConfig::mode_set)
        .def_readwrite("ring_half_width", &ScenarioConfig::ring_half_width)
        .def_readwrite("oblique_phi", &ScenarioConfig::oblique_phi)
        .def_readwrite("oblique_psi", &ScenarioConfig::oblique_psi)
        .def_readwrite("pairing_exponent_convention",
                       &ScenarioConfig::pairing_exponent_convention)
        .def_readwrite("fixed_uca_separation", &ScenarioConfig::fixed_uca_separation)
        .def("wavelength", &ScenarioConfig::wavelength)
        .def("validate", &ScenarioConfig::validate);

    m.def("parse_config", &parse_config, py::arg("json_text"));
    m.def("config_to_json", &config_to_json);
    m.def("chord_distance", &chord_distance);
    m.def("beam_axis_length", &beam_axis_length, py::arg("r_s"), py::arg("d"),
          py::arg("bs_height"));
    m.def("dbm_to_watt", &dbm_to_watt);
    m.def("watt_to_dbm", &watt_to_dbm);

    py::class_<Beam>(m, "Beam")
        .def(py::init([](int mode, int p, double w0, double lam) {
                 Beam b{mode, p, w0, lam};
                 b.validate();
                 return b;
             }),
             py::arg("mode"), py::arg("radial_index"), py::arg("waist_radius"),
             py::arg("wavelength"))
        .def_readonly("mode", &Beam::mode)
        .def_readonly("radial_index", &Beam::radial_index)
        .def_readonly("waist_radius", &Beam::waist_radius)
        .def_readonly("wavelength", &Beam::wavelength)
        .def("rayleigh_range", &Beam::rayleigh_range)
        .def("beam_radius", &Beam::beam_radius);

    m.def("laguerre_polynomial", &laguerre_polynomial);
    m.def("lg_amplitude", &lg_amplitude);
    m.def("lg_intensity", &lg_intensity);
    m.def("max_intensity_radius", &max_intensity_radius);
    m.def("peak_intensity", &peak_intensity);
    m.def("feasible_radius", &feasible_radius);
    m.def("waist_from_target_radius", &waist_from_target_radius);

    py::enum_<Region>(m, "Region")
        .value("DISK", Region::Disk)
        .value("SQUARE", Region::Square);
    py::enum_<SelectionStatus>(m, "SelectionStatus")
        .value("PAIR_FOUND", SelectionStatus::PairFound)
        .value("NO_PAIR", SelectionStatus::NoPair);

    py::class_<UserField>(m, "UserField")
        .def_readonly("positions", &UserField::positions)
        .def_readonly("seed", &UserField::seed);
    m.def("make_user_field", &make_user_field, py::arg("seed"), py::arg("count"),
          py::arg("region"), py::arg("size"));

    py::class_<SearchRing>(m, "SearchRing")
        .def(py::init<double, double>(), py::arg("r_s"), py::arg("epsilon"))
        .def_readonly("r_s", &SearchRing::r_s)
        .def_readonly("epsilon", &SearchRing::epsilon);

    py::class_<SelectionResult>(m, "SelectionResult")
        .def_readonly("status", &SelectionResult::status)
        .def_readonly("cu_indices", &SelectionResult::cu_indices)
        .def_readonly("ring", &SelectionResult::ring)
        .def_readonly("chord", &SelectionResult::chord)
        .def_readonly("z_c", &SelectionResult::z_c)
        .def_readonly("waist_radius", &SelectionResult::waist_radius)
        .def_readonly("iterations_inner", &SelectionResult::iterations_inner)
        .def_readonly("iterations_outer", &SelectionResult::iterations_outer);

    m.def("potential_users", &potential_users);
    m.def(
        "select_pair",
        [](const UserField& f, const ScenarioConfig& c, int max_outer) {
            return select_pair(f, c, SelectOptions{max_outer});
        },
        py::arg("field"), py::arg("config"), py::arg("max_outer_iterations") = -1);
    m.def("iteration_bound", &iteration_bound);

    m.def("ring_probability", &ring_probability);
    m.def("min_pair_distance", &min_pair_distance);
    m.def("min_search_radius", &min_search_radius);
    m.def("vanish_radius", &vanish_radius);
    m.def("distance_condition_probability", &distance_condition_probability);

    py::class_<FormationProbabilityBreakdown>(m, "FormationProbabilityBreakdown")
        .def_readonly("r_min", &FormationProbabilityBreakdown::r_min)
        .def_readonly("r_v", &FormationProbabilityBreakdown::r_v)
        .def_readonly("r_max_search", &FormationProbabilityBreakdown::r_max_search)
        .def_readonly("p_c", &FormationProbabilityBreakdown::p_c)
        .def_readonly("p_cow_per_user", &FormationProbabilityBreakdown::p_cow_per_user)
        .def_readonly("p_cow_per_pair", &FormationProbabilityBreakdown::p_cow_per_pair)
        .def_readonly("p_cow", &FormationProbabilityBreakdown::p_cow);
    m.def("formation_probability", &formation_probability);

    m.def("mux_matrix", &mux_matrix);
    m.def("effective_gain", &effective_gain);
    m.def("water_filling", [](const std::vector<double>& g, double p, double n) {
        const auto r = water_filling(g, p, n);
        return py::make_tuple(r.power, r.degenerate);
    });
    m.def("spectrum_efficiency", &spectrum_efficiency);
    m.def("feasible_region_epsilon", &feasible_region_epsilon);

    py::class_<ChannelRealization>(m, "ChannelRealization")
        .def_readonly("modes", &ChannelRealization::modes)
        .def_readonly("z_c", &ChannelRealization::z_c)
        .def_readonly("gain_matrix", &ChannelRealization::gain_matrix)
        .def_readonly("eigenvalues", &ChannelRealization::eigenvalues)
        .def_readonly("effective_gains", &ChannelRealization::effective_gains)
        .def_readonly("steered_gains", &ChannelRealization::steered_gains)
        .def_readonly("power_alloc", &ChannelRealization::power_alloc)
        .def_readonly("se_per_mode", &ChannelRealization::se_per_mode)
        .def_readonly("se_total", &ChannelRealization::se_total)
        .def_readonly("se_total_steered", &ChannelRealization::se_total_steered);
    m.def("build_channel", &build_channel);
    m.def("build_fixed_uca_baseline", &build_fixed_uca_baseline);

    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("BS_COVERAGE_RADIUS", SweepVariable::BsCoverageRadius)
        .value("USER_COUNT", SweepVariable::UserCount)
        .value("D2D_MAX", SweepVariable::D2dMax)
        .value("BS_HEIGHT", SweepVariable::BsHeight)
        .value("RING_HALF_WIDTH", SweepVariable::RingHalfWidth);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("variable", &SweepSpec::variable)
        .def_readwrite("values", &SweepSpec::values)
        .def_readwrite("trials", &SweepSpec::trials)
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("master_seed", &SweepSpec::master_seed)
        .def_readwrite("workers", &SweepSpec::workers);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("value", &SweepPoint::value)
        .def_readonly("p_cow_statistical", &SweepPoint::p_cow_statistical)
        .def_readonly("mc_stderr", &SweepPoint::mc_stderr)
        .def_readonly("p_cow_analytic_user", &SweepPoint::p_cow_analytic_user)
        .def_readonly("p_cow_analytic_pairs", &SweepPoint::p_cow_analytic_pairs)
        .def_readonly("mean_selected_cu_count", &SweepPoint::mean_selected_cu_count)
        .def_readonly("mean_se_total", &SweepPoint::mean_se_total)
        .def_readonly("mean_se_steered", &SweepPoint::mean_se_steered)
        .def_readonly("mean_se_fixed_baseline", &SweepPoint::mean_se_fixed_baseline);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("points", &SweepResult::points)
        .def_readonly("wall_seconds", &SweepResult::wall_seconds);

    m.def("run_sweep", &run_sweep, py::call_guard<py::gil_scoped_release>());
    m.def("pcow_csv", &pcow_csv);
    m.def("se_csv", &se_csv);
    m.def("cu_count_csv", &cu_count_csv);
    m.def("run_manifest_json", &run_manifest_json);
}
