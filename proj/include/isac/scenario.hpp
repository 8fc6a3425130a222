// SPDX-License-Identifier: Apache-2.0
//
// Scenario description and its JSON document format.
//
// A scenario names one system (a built-in band or a full parameter object), the
// placement that selects the transmit power, the target of interest, the surrounding
// clutter and self-interference, optional clock statistics, use-case requirements and
// an optional simulation block. All values are SI; keys ending in _db/_dbm/_dbi are
// logarithmic.

#ifndef ISAC_SCENARIO_HPP
#define ISAC_SCENARIO_HPP

#include "isac/accuracy.hpp"
#include "isac/link_budget.hpp"
#include "isac/quantization.hpp"
#include "isac/resolution.hpp"
#include "isac/simulation.hpp"
#include "isac/system_model.hpp"
#include "isac/target.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace isac {

enum class Placement { Indoor, Outdoor };

inline std::string_view to_string(Placement p) { return p == Placement::Indoor ? "indoor" : "outdoor"; }

struct SimulationSpec {
    std::vector<SimTarget> targets; // empty: target of interest plus clutter as static echoes
    int subcarriers = 256;
    int symbols = 64;
    int cols = 1;
    int rows = 1;
    std::optional<double> per_sample_snr;
    std::uint64_t seed = 42;
    std::optional<int> adc_bits;
    std::optional<int> fft_bits;
    bool thermal_noise = true;
};

struct Scenario {
    std::string name;
    SystemConfig system;
    Placement placement = Placement::Outdoor;
    Target target;
    Environment environment;
    std::optional<ClockStats> clock;
    Requirements requirements;
    bool use_angular_resolution = false;
    double min_snr = default_min_snr;
    std::optional<SimulationSpec> simulation;
};

inline Watts tx_power(const Scenario &s) {
    return s.placement == Placement::Outdoor ? s.system.outdoor_power : indoor_power_limit(s.system).power;
}

namespace detail {

using nlohmann::json;

class Reader {
public:
    Reader(const json &obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw InputError("expected an object", path_.empty() ? "<root>" : path_);
    }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }
    bool has(std::string_view key) const { return obj_.contains(key) && !obj_.at(std::string(key)).is_null(); }
    const json &raw(std::string_view key) const { return obj_.at(std::string(key)); }

    double number(std::string_view key) const {
        if (!has(key)) throw InputError("missing required key", field(key));
        const json &v = raw(key);
        if (!v.is_number()) throw InputError("expected a number", field(key));
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw InputError("must be finite", field(key));
        return d;
    }
    std::optional<double> opt_number(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }
    double number_or(std::string_view key, double fallback) const { return opt_number(key).value_or(fallback); }

    long long integer(std::string_view key) const {
        if (!has(key)) throw InputError("missing required key", field(key));
        const json &v = raw(key);
        if (!v.is_number_integer()) throw InputError("expected an integer", field(key));
        return v.get<long long>();
    }
    std::optional<long long> opt_integer(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        return integer(key);
    }

    std::string string(std::string_view key) const {
        if (!has(key)) throw InputError("missing required key", field(key));
        const json &v = raw(key);
        if (!v.is_string()) throw InputError("expected a string", field(key));
        return v.get<std::string>();
    }

    bool boolean_or(std::string_view key, bool fallback) const {
        if (!has(key)) return fallback;
        const json &v = raw(key);
        if (!v.is_boolean()) throw InputError("expected true or false", field(key));
        return v.get<bool>();
    }

    const json &object() const { return obj_; }

private:
    const json &obj_;
    std::string path_;
};

inline void require_positive(double v, const std::string &field) {
    if (!(v > 0.0)) throw InputError("must be positive", field);
}

} // namespace detail

/// Reads a system parameter object. When `base` names a built-in band the object only
/// needs the fields it overrides.
inline SystemConfig system_from_json(const nlohmann::json &j, const std::string &path = "system") {
    detail::Reader rd(j, path);
    SystemConfig cfg;
    bool from_builtin = false;
    if (rd.has("base")) {
        const Band b = band_from_string(rd.string("base"));
        if (b == Band::Custom) throw InputError("unknown built-in band", rd.field("base"));
        cfg = builtin_config(b);
        from_builtin = true;
    }
    auto num = [&](std::string_view key, double current) {
        return from_builtin ? rd.number_or(key, current) : rd.number(key);
    };
    auto integer = [&](std::string_view key, long long current) {
        return from_builtin ? rd.opt_integer(key).value_or(current) : rd.integer(key);
    };

    if (rd.has("band")) {
        cfg.band = band_from_string(rd.string("band"));
    } else if (!from_builtin) {
        cfg.band = Band::Custom;
    }
    cfg.carrier_frequency_hz = num("carrier_frequency_hz", cfg.carrier_frequency_hz);
    cfg.subcarrier_spacing_hz = num("subcarrier_spacing_hz", cfg.subcarrier_spacing_hz);
    cfg.num_subcarriers = static_cast<int>(integer("num_subcarriers", cfg.num_subcarriers));
    cfg.symbol_duration_s = num("symbol_duration_s", cfg.symbol_duration_s);
    if (rd.has("bandwidth_hz")) cfg.nominal_bandwidth_hz = rd.number("bandwidth_hz");

    cfg.noise_figure = Gain::from_db(rd.number_or("noise_figure_db", cfg.noise_figure.db()));
    cfg.element_gain = Gain::from_db(rd.number_or("element_gain_dbi", cfg.element_gain.db()));
    if (rd.has("array")) {
        detail::Reader arr(rd.raw("array"), rd.field("array"));
        cfg.array.rows = static_cast<int>(arr.opt_integer("rows").value_or(from_builtin ? cfg.array.rows : arr.integer("rows")));
        cfg.array.cols = static_cast<int>(arr.opt_integer("cols").value_or(from_builtin ? cfg.array.cols : arr.integer("cols")));
        cfg.array.row_spacing = arr.number_or("row_spacing_wavelengths", cfg.array.row_spacing);
        cfg.array.col_spacing = arr.number_or("col_spacing_wavelengths", cfg.array.col_spacing);
    } else if (!from_builtin) {
        throw InputError("missing required key", rd.field("array"));
    }
    if (rd.has("receive_array_gain_db")) cfg.receive_array_gain = Gain::from_db(rd.number("receive_array_gain_db"));

    cfg.outdoor_power = Watts::from_dbm(num("outdoor_power_dbm", from_builtin ? cfg.outdoor_power.dbm() : 0.0));
    if (rd.has("indoor_power_dbm")) cfg.indoor_power_override = Watts::from_dbm(rd.number("indoor_power_dbm"));
    if (rd.boolean_or("indoor_power_from_emf_limit", false)) cfg.indoor_power_override.reset();

    cfg.adc_bits = static_cast<int>(rd.opt_integer("adc_bits").value_or(cfg.adc_bits));
    if (rd.has("fft_bits")) cfg.fft_bits = static_cast<int>(rd.integer("fft_bits"));
    if (rd.has("prs")) {
        detail::Reader prs(rd.raw("prs"), rd.field("prs"));
        cfg.prs.symbols_per_slot = static_cast<int>(prs.opt_integer("symbols_per_slot").value_or(cfg.prs.symbols_per_slot));
        cfg.prs.comb_size = static_cast<int>(prs.opt_integer("comb_size").value_or(cfg.prs.comb_size));
        cfg.prs.frame_duration_s = prs.number_or("frame_duration_s", cfg.prs.frame_duration_s);
        cfg.prs.tdd_duty_cycle = prs.number_or("tdd_duty_cycle", cfg.prs.tdd_duty_cycle);
    }
    cfg.papr_penalty = Gain::from_db(rd.number_or("papr_db", cfg.papr_penalty.db()));
    cfg.agc_loss = Gain::from_db(rd.number_or("agc_loss_db", cfg.agc_loss.db()));
    cfg.emf_power_reduction = rd.number_or("emf_power_reduction", cfg.emf_power_reduction);
    cfg.emf_density_limit = rd.number_or("emf_density_limit_w_m2", cfg.emf_density_limit);
    cfg.emf_reference_distance = rd.number_or("emf_reference_distance_m", cfg.emf_reference_distance);
    if (rd.has("symbols_per_frame")) cfg.symbols_per_frame_override = static_cast<int>(rd.integer("symbols_per_frame"));

    try {
        validate(cfg);
    } catch (const InputError &e) {
        throw InputError(e.message(), e.field().empty() ? path : path + "." + e.field());
    }
    return cfg;
}

inline nlohmann::json system_to_json(const SystemConfig &cfg) {
    nlohmann::json j;
    j["band"] = std::string(to_string(cfg.band));
    j["carrier_frequency_hz"] = cfg.carrier_frequency_hz;
    j["subcarrier_spacing_hz"] = cfg.subcarrier_spacing_hz;
    j["num_subcarriers"] = cfg.num_subcarriers;
    j["symbol_duration_s"] = cfg.symbol_duration_s;
    if (cfg.nominal_bandwidth_hz) j["bandwidth_hz"] = *cfg.nominal_bandwidth_hz;
    j["noise_figure_db"] = cfg.noise_figure.db();
    j["element_gain_dbi"] = cfg.element_gain.db();
    j["array"] = {{"rows", cfg.array.rows},
                  {"cols", cfg.array.cols},
                  {"row_spacing_wavelengths", cfg.array.row_spacing},
                  {"col_spacing_wavelengths", cfg.array.col_spacing}};
    if (cfg.receive_array_gain) j["receive_array_gain_db"] = cfg.receive_array_gain->db();
    j["outdoor_power_dbm"] = cfg.outdoor_power.dbm();
    if (cfg.indoor_power_override) j["indoor_power_dbm"] = cfg.indoor_power_override->dbm();
    j["adc_bits"] = cfg.adc_bits;
    if (cfg.fft_bits) j["fft_bits"] = *cfg.fft_bits;
    j["prs"] = {{"symbols_per_slot", cfg.prs.symbols_per_slot},
                {"comb_size", cfg.prs.comb_size},
                {"frame_duration_s", cfg.prs.frame_duration_s},
                {"tdd_duty_cycle", cfg.prs.tdd_duty_cycle}};
    j["papr_db"] = cfg.papr_penalty.db();
    j["agc_loss_db"] = cfg.agc_loss.db();
    j["emf_power_reduction"] = cfg.emf_power_reduction;
    j["emf_density_limit_w_m2"] = cfg.emf_density_limit;
    j["emf_reference_distance_m"] = cfg.emf_reference_distance;
    if (cfg.symbols_per_frame_override) j["symbols_per_frame"] = *cfg.symbols_per_frame_override;
    return j;
}

namespace detail {

inline Target target_from_json(const nlohmann::json &j, const std::string &path) {
    Reader rd(j, path);
    Target t;
    t.rcs_m2 = rd.number("rcs_m2");
    require_positive(t.rcs_m2, rd.field("rcs_m2"));
    t.range_m = rd.number_or("range_m", t.range_m);
    require_positive(t.range_m, rd.field("range_m"));
    t.speed_mps = rd.number_or("speed_mps", 0.0);
    t.azimuth_deg = rd.number_or("azimuth_deg", 0.0);
    t.elevation_deg = rd.number_or("elevation_deg", 0.0);
    if (!(std::abs(t.azimuth_deg) < 90.0)) throw InputError("must be inside (-90, 90)", rd.field("azimuth_deg"));
    if (!(std::abs(t.elevation_deg) < 90.0)) throw InputError("must be inside (-90, 90)", rd.field("elevation_deg"));
    return t;
}

inline SimulationSpec simulation_from_json(const nlohmann::json &j, const std::string &path) {
    Reader rd(j, path);
    SimulationSpec sim;
    sim.subcarriers = static_cast<int>(rd.opt_integer("subcarriers").value_or(sim.subcarriers));
    sim.symbols = static_cast<int>(rd.opt_integer("symbols").value_or(sim.symbols));
    sim.cols = static_cast<int>(rd.opt_integer("cols").value_or(sim.cols));
    sim.rows = static_cast<int>(rd.opt_integer("rows").value_or(sim.rows));
    if (sim.subcarriers < 2) throw InputError("must be >= 2", rd.field("subcarriers"));
    if (sim.symbols < 1) throw InputError("must be >= 1", rd.field("symbols"));
    if (sim.cols < 1) throw InputError("must be >= 1", rd.field("cols"));
    if (sim.rows < 1) throw InputError("must be >= 1", rd.field("rows"));
    if (auto snr_db = rd.opt_number("per_sample_snr_db")) sim.per_sample_snr = db_to_linear(*snr_db);
    if (auto seed = rd.opt_integer("seed")) sim.seed = static_cast<std::uint64_t>(*seed);
    if (auto q = rd.opt_integer("adc_bits")) sim.adc_bits = static_cast<int>(*q);
    if (auto q = rd.opt_integer("fft_bits")) sim.fft_bits = static_cast<int>(*q);
    if (sim.adc_bits && *sim.adc_bits < 1) throw InputError("must be >= 1", rd.field("adc_bits"));
    if (sim.fft_bits && *sim.fft_bits < 1) throw InputError("must be >= 1", rd.field("fft_bits"));
    sim.thermal_noise = rd.boolean_or("thermal_noise", true);
    if (rd.has("targets")) {
        const auto &arr = rd.raw("targets");
        if (!arr.is_array()) throw InputError("expected an array", rd.field("targets"));
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string tp = rd.field("targets") + "[" + std::to_string(i) + "]";
            SimTarget st;
            st.target = target_from_json(arr[i], tp);
            Reader trd(arr[i], tp);
            if (auto snr_db = trd.opt_number("per_sample_snr_db")) st.per_sample_snr = db_to_linear(*snr_db);
            if (auto ph = trd.opt_number("phase_rad")) st.phase_rad = *ph;
            sim.targets.push_back(st);
        }
    }
    return sim;
}

} // namespace detail

inline Scenario scenario_from_json(const nlohmann::json &j) {
    detail::Reader rd(j, "");
    Scenario s;
    s.name = rd.has("name") ? rd.string("name") : std::string("unnamed");

    if (!rd.has("system")) throw InputError("missing required key", "system");
    const auto &sys = rd.raw("system");
    if (sys.is_string()) {
        const Band b = band_from_string(sys.get<std::string>());
        if (b == Band::Custom) throw InputError("unknown band name '" + sys.get<std::string>() + "'", "system");
        s.system = builtin_config(b);
    } else if (sys.is_object()) {
        s.system = system_from_json(sys, "system");
    } else {
        throw InputError("expected a band name or a parameter object", "system");
    }

    const std::string placement = rd.string("placement");
    if (placement == "indoor") {
        s.placement = Placement::Indoor;
    } else if (placement == "outdoor") {
        s.placement = Placement::Outdoor;
    } else {
        throw InputError("expected \"indoor\" or \"outdoor\"", "placement");
    }

    if (!rd.has("target")) throw InputError("missing required key", "target");
    s.target = detail::target_from_json(rd.raw("target"), "target");

    if (rd.has("clutter")) {
        const auto &arr = rd.raw("clutter");
        if (!arr.is_array()) throw InputError("expected an array", "clutter");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "clutter[" + std::to_string(i) + "]";
            detail::Reader crd(arr[i], path);
            ClutterObject obj{crd.number("rcs_m2"), crd.number("range_m")};
            detail::require_positive(obj.rcs_m2, path + ".rcs_m2");
            detail::require_positive(obj.range_m, path + ".range_m");
            s.environment.clutter.push_back(obj);
        }
    }
    if (rd.has("self_interference")) {
        const auto &si = rd.raw("self_interference");
        SelfInterference val = SelfInterference::default_for(s.system);
        if (si.is_string() && si.get<std::string>() == "default") {
            // keep defaults
        } else {
            detail::Reader srd(si, "self_interference");
            if (auto iso = srd.opt_number("isolation_db")) {
                if (*iso > 0.0) throw InputError("must be <= 0 dB", "self_interference.isolation_db");
                val.isolation = db_to_linear(*iso);
            }
            if (auto sep = srd.opt_number("separation_m")) {
                detail::require_positive(*sep, "self_interference.separation_m");
                val.separation_m = *sep;
            }
        }
        s.environment.self_interference = val;
    }

    if (rd.has("clock")) {
        detail::Reader crd(rd.raw("clock"), "clock");
        ClockStats c{crd.number_or("timing_std_s", 0.0), crd.number_or("frequency_std_hz", 0.0)};
        if (c.timing_std_s < 0.0) throw InputError("must be non-negative", "clock.timing_std_s");
        if (c.frequency_std_hz < 0.0) throw InputError("must be non-negative", "clock.frequency_std_hz");
        s.clock = c;
    }

    if (rd.has("requirements")) {
        detail::Reader qrd(rd.raw("requirements"), "requirements");
        s.requirements.horizontal_resolution_m = qrd.opt_number("horizontal_resolution_m");
        s.requirements.vertical_resolution_m = qrd.opt_number("vertical_resolution_m");
        s.requirements.range_m = qrd.opt_number("range_m");
        if (s.requirements.horizontal_resolution_m) detail::require_positive(*s.requirements.horizontal_resolution_m, "requirements.horizontal_resolution_m");
        if (s.requirements.vertical_resolution_m) detail::require_positive(*s.requirements.vertical_resolution_m, "requirements.vertical_resolution_m");
        if (s.requirements.range_m) detail::require_positive(*s.requirements.range_m, "requirements.range_m");
    }
    s.use_angular_resolution = rd.boolean_or("use_angular_resolution", s.requirements.has_resolution());
    s.min_snr = db_to_linear(rd.number_or("min_snr_db", 17.0));

    if (rd.has("simulation")) s.simulation = detail::simulation_from_json(rd.raw("simulation"), "simulation");
    return s;
}

namespace detail {
inline std::string parse_error_message(const std::string &text, const nlohmann::json::parse_error &e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what();
}
} // namespace detail

inline Scenario scenario_from_text(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text, nullptr, true, true); // allow comments
    } catch (const nlohmann::json::parse_error &e) {
        throw InputError(detail::parse_error_message(text, e));
    }
    return scenario_from_json(j);
}

/// Sample use cases shipped with the library, keyed by name.
inline std::optional<std::string_view> builtin_scenario_text(std::string_view name) {
    if (name == "fr2-indoor-factory") return R"({
  "name": "fr2-indoor-factory",
  "system": "fr2",
  "placement": "indoor",
  "target": {"rcs_m2": 1.0, "range_m": 15.0},
  "requirements": {"horizontal_resolution_m": 0.5, "range_m": 15.0},
  "use_angular_resolution": true
})";
    if (name == "traffic-count") return R"({
  "name": "traffic-count",
  "system": "fr2",
  "placement": "outdoor",
  "target": {"rcs_m2": 100.0, "range_m": 75.0},
  "requirements": {"horizontal_resolution_m": 2.5, "range_m": 50.0},
  "use_angular_resolution": true
})";
    if (name == "ghost-driver") return R"({
  "name": "ghost-driver",
  "system": "fr2",
  "placement": "outdoor",
  "target": {"rcs_m2": 100.0, "range_m": 150.0, "speed_mps": -30.0},
  "requirements": {"horizontal_resolution_m": 5.0, "range_m": 100.0},
  "use_angular_resolution": true
})";
    if (name == "pedestrian-crossing") return R"({
  "name": "pedestrian-crossing",
  "system": "fr2",
  "placement": "outdoor",
  "target": {"rcs_m2": 1.0, "range_m": 30.0, "speed_mps": 1.5},
  "requirements": {"horizontal_resolution_m": 1.0, "range_m": 40.0},
  "use_angular_resolution": true
})";
    if (name == "drone-detection") return R"({
  "name": "drone-detection",
  "system": "fr1",
  "placement": "outdoor",
  "target": {"rcs_m2": 0.1, "range_m": 1000.0, "speed_mps": 15.0},
  "requirements": {"range_m": 3000.0},
  "use_angular_resolution": false,
  "simulation": {
    "subcarriers": 256,
    "symbols": 64,
    "seed": 42,
    "targets": [
      {"rcs_m2": 0.1, "range_m": 1000.0, "speed_mps": 15.0, "per_sample_snr_db": -17.0},
      {"rcs_m2": 100.0, "range_m": 400.0, "per_sample_snr_db": -16.0}
    ]
  }
})";
    return std::nullopt;
}

inline std::vector<std::string> builtin_scenario_names() {
    return {"fr2-indoor-factory", "traffic-count", "ghost-driver", "pedestrian-crossing", "drone-detection"};
}

/// Loads a scenario from a file path, or from a built-in sample when `path_or_name`
/// matches one of `builtin_scenario_names()` and no such file exists.
inline Scenario load_scenario(const std::string &path_or_name) {
    std::ifstream in(path_or_name);
    if (!in) {
        if (auto text = builtin_scenario_text(path_or_name)) return scenario_from_text(std::string(*text));
        throw InputError("cannot open scenario file '" + path_or_name + "'", "scenario");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_text(buf.str());
}

/// Simulation scene for a scenario: the explicit simulation targets, or else the target
/// of interest plus every clutter object as a static boresight echo.
inline SimScene make_sim_scene(const Scenario &s) {
    SimScene scene;
    scene.config = s.system;
    scene.tx_power = tx_power(s);
    const SimulationSpec spec = s.simulation.value_or(SimulationSpec{});
    scene.subcarriers = spec.subcarriers;
    scene.symbols = spec.symbols;
    scene.cols = spec.cols;
    scene.rows = spec.rows;
    scene.per_sample_snr = spec.per_sample_snr;
    scene.seed = spec.seed;
    scene.thermal_noise = spec.thermal_noise;
    if (!spec.targets.empty()) {
        scene.targets = spec.targets;
    } else {
        scene.targets.push_back(SimTarget{s.target, std::nullopt, std::nullopt});
        for (const auto &obj : s.environment.clutter) {
            Target t;
            t.rcs_m2 = obj.rcs_m2;
            t.range_m = obj.range_m;
            scene.targets.push_back(SimTarget{t, std::nullopt, std::nullopt});
        }
    }
    return scene;
}

} // namespace isac

#endif // ISAC_SCENARIO_HPP
