// SPDX-License-Identifier: Apache-2.0
//
// Scenario evaluation and KPI tables.

#ifndef ISAC_REPORT_HPP
#define ISAC_REPORT_HPP

#include "isac/accuracy.hpp"
#include "isac/link_budget.hpp"
#include "isac/quantization.hpp"
#include "isac/resolution.hpp"
#include "isac/scenario.hpp"
#include "isac/system_model.hpp"

#include <json.hpp>

#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace isac {

struct ResolutionReport {
    Resolutions base;
    std::optional<AngularSpread> angular_deg;
    std::optional<double> vertical_per_m;   // rho_v / r
    std::optional<double> horizontal_per_m; // rho_h / r
    UnambiguousLimits unambiguous;
    std::vector<std::string> warnings;
};

inline ResolutionReport resolution_report(const SystemConfig &cfg, double azimuth_deg, double elevation_deg) {
    ResolutionReport rep;
    rep.base = resolutions(cfg);
    rep.unambiguous = unambiguous_limits(cfg);
    try {
        rep.angular_deg = angular_resolution(cfg, azimuth_deg, elevation_deg);
        const SpatialResolution per_m = spatial_resolution(cfg, azimuth_deg, elevation_deg, 1.0);
        rep.vertical_per_m = per_m.vertical_m;
        rep.horizontal_per_m = per_m.horizontal_m;
    } catch (const SteeringError &e) {
        rep.warnings.emplace_back(e.what());
    }
    return rep;
}

struct Verdict {
    bool feasible = true;
    std::optional<double> required_range_m;
    std::string reason;
};

struct KpiReport {
    std::string scenario;
    Band band = Band::Custom;
    Placement placement = Placement::Outdoor;
    Watts tx_power;
    DerivedParams derived;
    AccuracyReport accuracy;
    ResolutionReport resolution;
    RangeLimits limits;
    Verdict verdict;
    std::vector<std::string> warnings;
};

/// KPIs at the detection operating point (gamma = gamma*) and the scenario's target angles,
/// plus the achievable range and the feasibility verdict.
inline KpiReport evaluate(const Scenario &s) {
    validate(s.system);
    validate(s.environment);
    KpiReport rep;
    rep.scenario = s.name;
    rep.band = s.system.band;
    rep.placement = s.placement;
    rep.tx_power = tx_power(s);
    rep.derived = derive(s.system);
    if (s.placement == Placement::Indoor) {
        if (auto w = indoor_power_limit(s.system).warning) rep.warnings.push_back(*w);
    }
    rep.accuracy = accuracy_report(s.system, s.min_snr, s.target.azimuth_deg, s.target.elevation_deg, s.clock, s.min_snr);
    rep.resolution = resolution_report(s.system, s.target.azimuth_deg, s.target.elevation_deg);
    rep.limits = achievable_range(s.system, s.target, rep.tx_power, s.environment, s.requirements, s.min_snr,
                                  s.use_angular_resolution);
    for (const auto &w : rep.accuracy.warnings) rep.warnings.push_back(w);
    for (const auto &w : rep.resolution.warnings) rep.warnings.push_back(w);
    for (const auto &w : rep.limits.warnings) rep.warnings.push_back(w);

    rep.verdict.required_range_m = s.requirements.range_m;
    char buf[160];
    if (s.requirements.range_m) {
        rep.verdict.feasible = rep.limits.achievable_m >= *s.requirements.range_m;
        if (rep.verdict.feasible) {
            std::snprintf(buf, sizeof buf, "feasible at %.6g m (r* = %.6g m)", *s.requirements.range_m,
                          rep.limits.achievable_m);
        } else {
            std::snprintf(buf, sizeof buf, "infeasible: %s limits r* to %.6g m < required %.6g m",
                          std::string(to_string(rep.limits.binding)).c_str(), rep.limits.achievable_m,
                          *s.requirements.range_m);
        }
    } else {
        std::snprintf(buf, sizeof buf, "feasible up to r* = %.6g m (no required range)", rep.limits.achievable_m);
    }
    rep.verdict.reason = buf;
    return rep;
}

namespace detail {
inline nlohmann::json opt_json(const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(); }
} // namespace detail

inline nlohmann::json to_json(const KpiReport &r) {
    using nlohmann::json;
    json j;
    j["scenario"] = r.scenario;
    j["band"] = std::string(to_string(r.band));
    j["placement"] = std::string(to_string(r.placement));
    j["tx_power_dbm"] = r.tx_power.dbm();
    j["derived"] = {{"array_gain_db", linear_to_db(r.derived.array_gain)},
                    {"symbols_per_frame", r.derived.symbols_per_frame},
                    {"doppler_sampling_period_s", r.derived.doppler_sampling_period},
                    {"indoor_power_dbm", r.derived.indoor_power.dbm()}};
    json acc;
    acc["snr_db"] = linear_to_db(r.accuracy.snr);
    acc["range_m"] = detail::opt_json(r.accuracy.range_m);
    acc["speed_mps"] = detail::opt_json(r.accuracy.speed_mps);
    acc["vertical_naf"] = detail::opt_json(r.accuracy.vertical_naf);
    acc["horizontal_naf"] = detail::opt_json(r.accuracy.horizontal_naf);
    acc["elevation_deg"] = detail::opt_json(r.accuracy.elevation_deg);
    acc["azimuth_deg"] = detail::opt_json(r.accuracy.azimuth_deg);
    if (r.accuracy.clock_inflated) {
        acc["clock_range_m"] = r.accuracy.clock_inflated->range_m;
        acc["clock_speed_mps"] = r.accuracy.clock_inflated->speed_mps;
    }
    j["accuracy"] = acc;
    json res;
    res["range_m"] = r.resolution.base.range_m;
    res["speed_mps"] = r.resolution.base.speed_mps;
    res["vertical_naf"] = r.resolution.base.vertical_naf;
    res["horizontal_naf"] = r.resolution.base.horizontal_naf;
    if (r.resolution.angular_deg) {
        res["elevation_deg"] = r.resolution.angular_deg->elevation_deg;
        res["azimuth_deg"] = r.resolution.angular_deg->azimuth_deg;
    }
    res["vertical_per_m"] = detail::opt_json(r.resolution.vertical_per_m);
    res["horizontal_per_m"] = detail::opt_json(r.resolution.horizontal_per_m);
    res["unambiguous_range_m"] = r.resolution.unambiguous.range_m;
    res["unambiguous_speed_mps"] = r.resolution.unambiguous.speed_mps;
    j["resolution"] = res;
    json lim;
    lim["noise_m"] = r.limits.noise_m;
    lim["quantization_m"] = detail::opt_json(r.limits.quantization_m);
    lim["vertical_m"] = detail::opt_json(r.limits.vertical_m);
    lim["horizontal_m"] = detail::opt_json(r.limits.horizontal_m);
    lim["resolution_m"] = detail::opt_json(r.limits.resolution_m);
    lim["ambiguity_m"] = r.limits.ambiguity_m;
    lim["achievable_m"] = r.limits.achievable_m;
    lim["binding"] = std::string(to_string(r.limits.binding));
    j["range_limits"] = lim;
    j["verdict"] = {{"feasible", r.verdict.feasible},
                    {"required_range_m", detail::opt_json(r.verdict.required_range_m)},
                    {"reason", r.verdict.reason}};
    j["warnings"] = r.warnings;
    return j;
}

inline std::string format_text(const KpiReport &r) {
    std::string out;
    char buf[256];
    auto line = [&](const char *fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
        out += '\n';
    };
    auto opt = [](const std::optional<double> &v) { return v ? *v : std::numeric_limits<double>::quiet_NaN(); };
    line("scenario: %s (%s, %s, P_T = %.2f dBm)", r.scenario.c_str(), std::string(to_string(r.band)).c_str(),
         std::string(to_string(r.placement)).c_str(), r.tx_power.dbm());
    line("accuracy at %.1f dB: range %.4g m, speed %.4g m/s, elevation %.4g deg, azimuth %.4g deg",
         linear_to_db(r.accuracy.snr), opt(r.accuracy.range_m), opt(r.accuracy.speed_mps),
         opt(r.accuracy.elevation_deg), opt(r.accuracy.azimuth_deg));
    if (r.accuracy.clock_inflated) {
        line("  with clock errors: range %.4g m, speed %.4g m/s", r.accuracy.clock_inflated->range_m,
             r.accuracy.clock_inflated->speed_mps);
    }
    line("resolution: range %.4g m, speed %.4g m/s, vertical %.4g*r m, horizontal %.4g*r m", r.resolution.base.range_m,
         r.resolution.base.speed_mps, opt(r.resolution.vertical_per_m), opt(r.resolution.horizontal_per_m));
    line("unambiguous: range %.6g m, speed %.6g m/s", r.resolution.unambiguous.range_m,
         r.resolution.unambiguous.speed_mps);
    out += "range limits:\n";
    line("  noise         %.6g m", r.limits.noise_m);
    if (r.limits.quantization_m) line("  quantization  %.6g m", *r.limits.quantization_m);
    if (r.limits.vertical_m) line("  vertical res  %.6g m", *r.limits.vertical_m);
    if (r.limits.horizontal_m) line("  horizontal res %.6g m", *r.limits.horizontal_m);
    line("  ambiguity     %.6g m", r.limits.ambiguity_m);
    line("r* = %.6g m (binding: %s)", r.limits.achievable_m, std::string(to_string(r.limits.binding)).c_str());
    line("verdict: %s", r.verdict.reason.c_str());
    for (const auto &w : r.warnings) line("warning: %s", w.c_str());
    return out;
}

// ---------------------------------------------------------------------------
// KPI table

enum class TableFormat { Markdown, Csv, Json };

struct KpiColumn {
    std::string name;
    SystemConfig config;
};

struct KpiRow {
    std::string key;
    std::string label;
    std::string unit;
    std::vector<std::optional<double>> values;
    bool per_range = false; // value is a coefficient of r
    bool footnote = false;
};

/// The twelve-row KPI table at gamma = gamma* and boresight, one column per system.
inline std::vector<KpiRow> kpi_rows(const std::vector<KpiColumn> &cols, double snr = default_min_snr) {
    std::vector<KpiRow> rows{
        {"sigma_r", "sigma_r", "m", {}, false, false},
        {"sigma_v", "sigma_v", "m/s", {}, false, false},
        {"sigma_phi", "sigma_phi (boresight)", "deg", {}, false, false},
        {"sigma_theta", "sigma_theta (boresight)", "deg", {}, false, false},
        {"rho_r", "rho_r", "m", {}, false, false},
        {"rho_s", "rho_s", "m/s", {}, false, false},
        {"rho_phi", "rho_phi (boresight)", "deg", {}, false, false},
        {"rho_theta", "rho_theta (boresight)", "deg", {}, false, false},
        {"rho_v", "rho_v (boresight)", "m", {}, true, false},
        {"rho_h", "rho_h (boresight)", "m", {}, true, false},
        {"r_u", "r_u*", "m", {}, false, false},
        {"s_u", "s_u", "m/s", {}, false, false},
    };
    bool any_builtin = false;
    for (const auto &col : cols) {
        validate(col.config);
        any_builtin = any_builtin || col.config.band != Band::Custom;
        const AccuracyReport acc = accuracy_report(col.config, snr, 0.0, 0.0, std::nullopt, snr);
        const ResolutionReport res = resolution_report(col.config, 0.0, 0.0);
        const std::optional<double> v[12] = {
            acc.range_m,
            acc.speed_mps,
            acc.elevation_deg,
            acc.azimuth_deg,
            res.base.range_m,
            res.base.speed_mps,
            res.angular_deg ? std::optional<double>(res.angular_deg->elevation_deg) : std::nullopt,
            res.angular_deg ? std::optional<double>(res.angular_deg->azimuth_deg) : std::nullopt,
            res.vertical_per_m,
            res.horizontal_per_m,
            res.unambiguous.range_m,
            res.unambiguous.speed_mps,
        };
        for (int i = 0; i < 12; ++i) rows[i].values.push_back(v[i]);
    }
    rows[2].footnote = rows[3].footnote = any_builtin;
    return rows;
}

inline const char *kpi_table_footnote() {
    return "Angular accuracy is the NAF Cramer-Rao bound mapped to angle at boresight. Published "
           "reference values for the built-in bands are larger by roughly 2*pi^2 and are not reproduced.";
}

namespace detail {
inline std::string fmt_value(const std::optional<double> &v, bool per_range) {
    if (!v) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, per_range ? "%.4g*r" : "%.4g", *v);
    return buf;
}
} // namespace detail

inline std::string kpi_table(const std::vector<KpiColumn> &cols, TableFormat format, double snr = default_min_snr) {
    const auto rows = kpi_rows(cols, snr);
    std::string out;
    if (format == TableFormat::Json) {
        nlohmann::json j;
        j["snr_db"] = linear_to_db(snr);
        j["columns"] = nlohmann::json::array();
        for (const auto &c : cols) j["columns"].push_back(c.name);
        j["rows"] = nlohmann::json::array();
        for (const auto &r : rows) {
            nlohmann::json row{{"key", r.key}, {"unit", r.unit}, {"per_range", r.per_range}, {"footnote", r.footnote}};
            row["values"] = nlohmann::json::array();
            for (const auto &v : r.values) row["values"].push_back(detail::opt_json(v));
            j["rows"].push_back(row);
        }
        if (rows[2].footnote) j["footnote"] = kpi_table_footnote();
        return j.dump(2) + "\n";
    }
    if (format == TableFormat::Csv) {
        out += "parameter,unit";
        for (const auto &c : cols) out += "," + c.name;
        out += "\n";
        for (const auto &r : rows) {
            out += r.key + "," + (r.per_range ? r.unit + "/m" : r.unit);
            for (const auto &v : r.values) {
                char buf[64];
                if (v) {
                    std::snprintf(buf, sizeof buf, ",%.10g", *v);
                    out += buf;
                } else {
                    out += ",";
                }
            }
            out += "\n";
        }
        return out;
    }
    char head[128];
    std::snprintf(head, sizeof head, "KPIs at SNR = %.4g dB, line of sight\n\n", linear_to_db(snr));
    out += head;
    out += "| Parameter |";
    for (const auto &c : cols) out += " " + c.name + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < cols.size(); ++i) out += "---|";
    out += "\n";
    for (const auto &r : rows) {
        out += "| " + r.label + " [" + r.unit + "]" + (r.footnote ? " [1]" : "") + " |";
        for (const auto &v : r.values) out += " " + detail::fmt_value(v, r.per_range) + " |";
        out += "\n";
    }
    if (rows[2].footnote) out += std::string("\n[1] ") + kpi_table_footnote() + "\n";
    return out;
}

} // namespace isac

#endif // ISAC_REPORT_HPP
