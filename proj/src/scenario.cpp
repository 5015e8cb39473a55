#include "cow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cow {

double normalize_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
}

PolarPoint make_polar(double r, double theta) {
    if (r < 0.0) throw std::invalid_argument("polar radius must be nonnegative");
    return PolarPoint{r, normalize_angle(theta)};
}

double chord_distance(const PolarPoint& u, const PolarPoint& v) {
    const double dx = u.r * std::cos(u.theta) - v.r * std::cos(v.theta);
    const double dy = u.r * std::sin(u.theta) - v.r * std::sin(v.theta);
    return std::hypot(dx, dy);
}

double beam_axis_length(double r_s, double d, double bs_height) {
    const double radicand = r_s * r_s - 0.25 * d * d + bs_height * bs_height;
    if (radicand < 0.0) {
        throw std::domain_error("beam_axis_length: chord longer than the geometry allows");
    }
    return std::sqrt(radicand);
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
    if (watt <= 0.0) throw std::domain_error("watt_to_dbm: power must be positive");
    return 10.0 * std::log10(watt) + 30.0;
}

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

int ScenarioConfig::max_abs_mode() const {
    int best = 0;
    for (int ell : mode_set) best = std::max(best, std::abs(ell));
    return best;
}

void ScenarioConfig::validate() const {
    if (frequency <= 0.0) throw std::invalid_argument("frequency must be positive");
    if (bs_height < 0.0) throw std::invalid_argument("bs_height must be nonnegative");
    if (bs_coverage_radius <= 0.0) throw std::invalid_argument("bs_coverage_radius must be positive");
    if (user_count < 0) throw std::invalid_argument("user_count must be nonnegative");
    if (d2d_max <= 0.0 || d2d_max > 2.0 * bs_coverage_radius) {
        throw std::invalid_argument("d2d_max must lie in (0, 2*bs_coverage_radius]");
    }
    if (tx_power <= 0.0) throw std::invalid_argument("tx_power must be positive");
    if (noise_power <= 0.0) throw std::invalid_argument("noise_power must be positive");
    if (uca_elements < 1) throw std::invalid_argument("uca_elements must be at least 1");
    if (uca_radius <= 0.0) throw std::invalid_argument("uca_radius must be positive");
    if (mode_set.empty()) throw std::invalid_argument("mode_set must not be empty");
    for (int ell : mode_set) {
        if (ell == 0) throw std::invalid_argument("mode_set entries must be nonzero");
    }
    if (!(ring_half_width > 0.0 && ring_half_width < bs_coverage_radius)) {
        throw std::invalid_argument("ring_half_width must lie in (0, bs_coverage_radius)");
    }
    if (fixed_uca_separation <= 0.0) {
        throw std::invalid_argument("fixed_uca_separation must be positive");
    }
}

namespace {

using nlohmann::json;

PairingExponent parse_exponent(const std::string& s) {
    if (s == "per-user") return PairingExponent::PerUser;
    if (s == "per-pair") return PairingExponent::PerPair;
    throw std::invalid_argument("pairing_exponent_convention must be 'per-user' or 'per-pair'");
}

ScenarioConfig from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

    static const std::vector<std::string> known = {
        "frequency", "wavelength", "bs_height", "bs_coverage_radius", "user_count",
        "d2d_max", "tx_power", "noise_power", "uca_elements", "uca_radius",
        "mode_set", "ring_half_width", "oblique_phi", "oblique_psi",
        "oblique_phi_deg", "oblique_psi_deg", "pairing_exponent_convention",
        "fixed_uca_separation"};
    for (const auto& item : doc.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw std::invalid_argument("unknown config key: " + item.key());
        }
    }

    ScenarioConfig cfg;
    if (doc.contains("frequency")) cfg.frequency = doc.at("frequency").get<double>();
    if (doc.contains("wavelength")) {
        // wavelength is derived; accept it only when consistent with frequency.
        const double lam = doc.at("wavelength").get<double>();
        if (!doc.contains("frequency")) {
            cfg.frequency = kSpeedOfLight / lam;
        } else if (std::abs(lam - cfg.wavelength()) > 1e-9 * cfg.wavelength()) {
            throw std::invalid_argument("wavelength inconsistent with frequency");
        }
    }
    if (doc.contains("bs_height")) cfg.bs_height = doc.at("bs_height").get<double>();
    if (doc.contains("bs_coverage_radius"))
        cfg.bs_coverage_radius = doc.at("bs_coverage_radius").get<double>();
    if (doc.contains("user_count")) cfg.user_count = doc.at("user_count").get<int>();
    if (doc.contains("d2d_max")) cfg.d2d_max = doc.at("d2d_max").get<double>();
    if (doc.contains("tx_power")) cfg.tx_power = dbm_to_watt(doc.at("tx_power").get<double>());
    if (doc.contains("noise_power"))
        cfg.noise_power = dbm_to_watt(doc.at("noise_power").get<double>());
    if (doc.contains("uca_elements")) cfg.uca_elements = doc.at("uca_elements").get<int>();
    if (doc.contains("uca_radius")) cfg.uca_radius = doc.at("uca_radius").get<double>();
    if (doc.contains("mode_set")) cfg.mode_set = doc.at("mode_set").get<std::vector<int>>();
    if (doc.contains("ring_half_width"))
        cfg.ring_half_width = doc.at("ring_half_width").get<double>();
    if (doc.contains("oblique_phi") && doc.contains("oblique_phi_deg"))
        throw std::invalid_argument("give oblique_phi or oblique_phi_deg, not both");
    if (doc.contains("oblique_psi") && doc.contains("oblique_psi_deg"))
        throw std::invalid_argument("give oblique_psi or oblique_psi_deg, not both");
    if (doc.contains("oblique_phi")) cfg.oblique_phi = doc.at("oblique_phi").get<double>();
    if (doc.contains("oblique_phi_deg"))
        cfg.oblique_phi = deg_to_rad(doc.at("oblique_phi_deg").get<double>());
    if (doc.contains("oblique_psi")) cfg.oblique_psi = doc.at("oblique_psi").get<double>();
    if (doc.contains("oblique_psi_deg"))
        cfg.oblique_psi = deg_to_rad(doc.at("oblique_psi_deg").get<double>());
    if (doc.contains("pairing_exponent_convention"))
        cfg.pairing_exponent_convention =
            parse_exponent(doc.at("pairing_exponent_convention").get<std::string>());
    if (doc.contains("fixed_uca_separation"))
        cfg.fixed_uca_separation = doc.at("fixed_uca_separation").get<double>();

    cfg.validate();
    return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    // A run manifest embeds the config under "config"; accept it directly so
    // manifests can be replayed.
    if (doc.is_object() && doc.contains("config") && doc.contains("run")) {
        return from_json(doc.at("config"));
    }
    return from_json(doc);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json doc;
    doc["frequency"] = cfg.frequency;
    doc["bs_height"] = cfg.bs_height;
    doc["bs_coverage_radius"] = cfg.bs_coverage_radius;
    doc["user_count"] = cfg.user_count;
    doc["d2d_max"] = cfg.d2d_max;
    doc["tx_power"] = watt_to_dbm(cfg.tx_power);
    doc["noise_power"] = watt_to_dbm(cfg.noise_power);
    doc["uca_elements"] = cfg.uca_elements;
    doc["uca_radius"] = cfg.uca_radius;
    doc["mode_set"] = cfg.mode_set;
    doc["ring_half_width"] = cfg.ring_half_width;
    doc["oblique_phi"] = cfg.oblique_phi;
    doc["oblique_psi"] = cfg.oblique_psi;
    doc["pairing_exponent_convention"] =
        cfg.pairing_exponent_convention == PairingExponent::PerUser ? "per-user" : "per-pair";
    doc["fixed_uca_separation"] = cfg.fixed_uca_separation;
    return doc.dump(2);
}

ScenarioConfig apply_override(const ScenarioConfig& cfg, const std::string& key,
                              const std::string& value) {
    json doc = json::parse(config_to_json(cfg));
    if (!doc.contains(key) && key != "oblique_phi_deg" && key != "oblique_psi_deg") {
        throw std::invalid_argument("unknown override key: " + key);
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare strings, e.g. per-pair
    }
    if (key == "oblique_phi_deg") doc.erase("oblique_phi");
    if (key == "oblique_psi_deg") doc.erase("oblique_psi");
    doc[key] = parsed;
    return parse_config(doc.dump());
}

}  // namespace cow
