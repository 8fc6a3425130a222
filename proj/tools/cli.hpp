// SPDX-License-Identifier: Apache-2.0
//
// isac-perf command line. Kept in a header so tests can drive it in-process.

#ifndef ISAC_TOOLS_CLI_HPP
#define ISAC_TOOLS_CLI_HPP

#include "isac/export.hpp"
#include "isac/periodogram.hpp"
#include "isac/report.hpp"
#include "isac/scenario.hpp"
#include "isac/simulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace isac::cli {

enum ExitCode : int { ok = 0, infeasible = 1, input_error = 2, internal_error = 3 };

namespace detail {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A band name, "all", a comma separated list of names, or a system JSON file.
inline std::vector<KpiColumn> resolve_bands(const std::vector<std::string> &specs) {
    std::vector<KpiColumn> cols;
    for (const auto &spec : specs) {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            if (item == "all") {
                for (Band b : {Band::FR1, Band::FR2, Band::FR3}) cols.push_back({std::string(to_string(b)), builtin_config(b)});
                continue;
            }
            const Band b = band_from_string(item);
            if (b != Band::Custom) {
                cols.push_back({std::string(to_string(b)), builtin_config(b)});
                continue;
            }
            if (!std::filesystem::exists(item)) throw InputError("unknown band or missing file '" + item + "'", "band");
            const std::string text = read_file(item);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text, nullptr, true, true); // allow comments
            } catch (const nlohmann::json::parse_error &e) {
                throw InputError(isac::detail::parse_error_message(text, e));
            }
            const auto &sys = j.contains("system") ? j.at("system") : j;
            SystemConfig cfg = system_from_json(sys, "system");
            if (!sys.contains("band")) cfg.band = Band::Custom; // derived from a base: no longer the tabulated system
            cols.push_back({std::filesystem::path(item).stem().string(), cfg});
        }
    }
    if (cols.empty()) throw InputError("no band given", "band");
    return cols;
}

inline Scenario scenario_with_override(const std::string &path, const std::string &band) {
    Scenario s = load_scenario(path);
    if (!band.empty()) {
        const Band b = band_from_string(band);
        if (b == Band::Custom) throw InputError("unknown band '" + band + "'", "band");
        s.system = builtin_config(b);
    }
    return s;
}

} // namespace detail

inline int cmd_kpi(const std::vector<std::string> &bands, const std::string &format, std::ostream &out) {
    TableFormat fmt = TableFormat::Markdown;
    if (format == "csv") fmt = TableFormat::Csv;
    if (format == "json") fmt = TableFormat::Json;
    out << kpi_table(detail::resolve_bands(bands), fmt);
    return ok;
}

inline int cmd_max_range(const Scenario &s, const std::string &format, std::ostream &out) {
    const KpiReport rep = evaluate(s);
    if (format == "json") {
        nlohmann::json j = to_json(rep)["range_limits"];
        j["scenario"] = rep.scenario;
        j["warnings"] = rep.warnings;
        out << j.dump(2) << "\n";
        return ok;
    }
    char buf[128];
    out << "scenario: " << rep.scenario << " (" << to_string(rep.band) << ", " << to_string(rep.placement) << ")\n";
    auto row = [&](const char *name, std::optional<double> v) {
        if (!v) return;
        std::snprintf(buf, sizeof buf, "  %-16s %12.6g m\n", name, *v);
        out << buf;
    };
    row("noise", rep.limits.noise_m);
    row("quantization", rep.limits.quantization_m);
    row("vertical res.", rep.limits.vertical_m);
    row("horizontal res.", rep.limits.horizontal_m);
    row("ambiguity", rep.limits.ambiguity_m);
    std::snprintf(buf, sizeof buf, "r* = %.6g m (binding: %s)\n", rep.limits.achievable_m,
                  std::string(to_string(rep.limits.binding)).c_str());
    out << buf;
    for (const auto &w : rep.warnings) out << "warning: " << w << "\n";
    return ok;
}

inline int cmd_feasibility(const Scenario &s, const std::string &format, std::ostream &out) {
    const KpiReport rep = evaluate(s);
    if (format == "json") {
        out << to_json(rep).dump(2) << "\n";
    } else {
        out << format_text(rep);
    }
    return rep.verdict.feasible ? ok : infeasible;
}

struct SimulateArgs {
    std::string axes = "range-doppler";
    int pad = 1;
    std::string out_prefix;
    std::optional<std::uint64_t> seed;
    std::string output_dir;
    std::string window = "rectangular";
};

inline int cmd_simulate(const Scenario &s, const SimulateArgs &args, std::ostream &out) {
    PeriodogramOptions opts;
    if (args.axes == "range-doppler") {
        opts.axes = Axes::RangeDoppler;
    } else if (args.axes == "range-azimuth") {
        opts.axes = Axes::RangeAzimuth;
    } else {
        throw InputError("expected range-doppler or range-azimuth", "axes");
    }
    opts.window = args.window == "hann" ? Window::Hann : Window::Rectangular;
    if (args.pad < 1) throw InputError("zero-pad factor must be >= 1", "pad");
    opts.range_pad = opts.cross_pad = args.pad;

    SimScene scene = make_sim_scene(s);
    if (args.seed) scene.seed = *args.seed;
    // Azimuth needs several columns; fall back to the configured array width.
    if (opts.axes == Axes::RangeAzimuth && scene.cols < 2) scene.cols = s.system.array.cols;
    const SimulationSpec spec = s.simulation.value_or(SimulationSpec{});
    const int adc_bits = spec.adc_bits.value_or(s.system.adc_bits);
    opts.fft_bits = spec.fft_bits ? spec.fft_bits : s.system.fft_bits;

    SymbolGrid grid = synthesize_grid(scene);
    grid = quantize_grid(std::move(grid), adc_bits);
    const PeriodogramGrid pgm = compute_periodogram(grid, s.system, opts);
    const auto dets = detect_targets(pgm, s.min_snr);

    namespace fs = std::filesystem;
    if (args.out_prefix.empty()) throw InputError("output prefix required", "out");
    fs::path base = args.output_dir.empty() ? fs::path(args.out_prefix) : fs::path(args.output_dir) / args.out_prefix;
    if (base.has_parent_path()) fs::create_directories(base.parent_path());
    const std::string csv_path = base.string() + ".csv";
    const std::string meta_path = base.string() + ".json";
    const std::string det_path = base.string() + ".detections.json";

    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + csv_path + "'", "out");
        write_periodogram_csv(f, pgm);
    }
    nlohmann::json meta = periodogram_metadata(pgm);
    meta["scenario"] = s.name;
    meta["band"] = std::string(to_string(s.system.band));
    meta["seed"] = scene.seed;
    meta["grid"] = {{"subcarriers", grid.subcarriers}, {"symbols", grid.symbols}, {"cols", grid.cols}, {"rows", grid.rows}};
    meta["adc_bits"] = adc_bits;
    meta["fft_bits"] = opts.fft_bits ? nlohmann::json(*opts.fft_bits) : nlohmann::json();
    meta["detection_threshold_db"] = linear_to_db(s.min_snr);
    meta["warnings"] = grid.warnings;
    {
        std::ofstream f(meta_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + meta_path + "'", "out");
        f << meta.dump(2) << "\n";
    }
    {
        std::ofstream f(det_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + det_path + "'", "out");
        f << detections_json(dets).dump(2) << "\n";
    }

    char buf[160];
    out << "wrote " << csv_path << ", " << meta_path << ", " << det_path << "\n";
    constexpr std::size_t shown = 10;
    for (std::size_t i = 0; i < std::min(dets.size(), shown); ++i) {
        const Detection &d = dets[i];
        if (d.speed_mps) {
            std::snprintf(buf, sizeof buf, "detection: range %.3f m, speed %.3f m/s, %.1f dB over floor\n", d.range_m,
                          *d.speed_mps, 10.0 * std::log10(d.peak_to_floor));
        } else {
            std::snprintf(buf, sizeof buf, "detection: range %.3f m, azimuth %.2f deg, %.1f dB over floor\n", d.range_m,
                          d.azimuth_deg.value_or(0.0), 10.0 * std::log10(d.peak_to_floor));
        }
        out << buf;
    }
    if (dets.size() > shown) out << "... " << dets.size() - shown << " weaker detections in " << det_path << "\n";
    for (const auto &w : grid.warnings) out << "warning: " << w << "\n";
    return ok;
}

inline int cmd_rcs_estimate(const std::string &band, double peak_db, double range_m, const std::string &placement,
                            std::ostream &out) {
    const auto cols = detail::resolve_bands({band});
    const SystemConfig &cfg = cols.front().config;
    Watts tx = cfg.outdoor_power;
    if (placement == "indoor") {
        tx = indoor_power_limit(cfg).power;
    } else if (placement != "outdoor") {
        throw InputError("expected indoor or outdoor", "placement");
    }
    // Peak given relative to the thermal noise power in the occupied bandwidth.
    const double peak_w = db_to_linear(peak_db) * noise_power(cfg).value;
    const double rcs = estimate_rcs(cfg, peak_w, range_m, tx);
    char buf[128];
    std::snprintf(buf, sizeof buf, "estimated RCS: %.6g m^2 (%.2f dBsm)\n", rcs, linear_to_db(rcs));
    out << buf;
    return ok;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Link-level sensing KPI calculator and OFDM radar simulator", "isac-perf"};
    app.require_subcommand(1);

    std::vector<std::string> bands;
    std::string format = "md";
    auto *kpi = app.add_subcommand("kpi", "KPI table for one or more bands");
    kpi->add_option("--band", bands, "fr1, fr2, fr3, all, comma lists, or a system JSON file")->required();
    kpi->add_option("--format", format, "md, csv or json")->check(CLI::IsMember({"md", "csv", "json"}));

    std::string scenario, band_override, text_format = "text";
    auto scenario_opts = [&](CLI::App *sub) {
        sub->add_option("--scenario", scenario, "scenario JSON file or built-in sample name")->required();
        sub->add_option("--band", band_override, "replace the scenario system by a built-in band");
    };
    auto *max_range = app.add_subcommand("max-range", "Range limits and the achievable range r*");
    scenario_opts(max_range);
    max_range->add_option("--format", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));
    auto *feas = app.add_subcommand("feasibility", "Full report and verdict; exit 1 when infeasible");
    scenario_opts(feas);
    feas->add_option("--format", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    SimulateArgs sim;
    std::uint64_t seed = 0;
    auto *simulate = app.add_subcommand("simulate", "Synthesize a scene and export its periodogram");
    scenario_opts(simulate);
    simulate->add_option("--axes", sim.axes, "range-doppler or range-azimuth")
        ->check(CLI::IsMember({"range-doppler", "range-azimuth"}));
    simulate->add_option("--pad", sim.pad, "zero-pad factor on both axes")->check(CLI::PositiveNumber);
    simulate->add_option("--window", sim.window, "rectangular or hann")->check(CLI::IsMember({"rectangular", "hann"}));
    simulate->add_option("--out", sim.out_prefix, "output path prefix")->required();
    auto *seed_opt = simulate->add_option("--seed", seed, "RNG seed, overrides the scenario");
    simulate->add_option("--output-dir", sim.output_dir, "directory prepended to the output prefix");

    std::string rcs_band, placement = "outdoor";
    double peak_db = 0.0, range_m = 0.0;
    auto *rcs = app.add_subcommand("rcs-estimate", "RCS from a periodogram peak");
    rcs->add_option("--band", rcs_band, "band name or system JSON file")->required();
    rcs->add_option("--peak-db", peak_db, "peak power relative to thermal noise power, dB")->required();
    rcs->add_option("--range", range_m, "target range, m")->required();
    rcs->add_option("--placement", placement, "indoor or outdoor")->check(CLI::IsMember({"indoor", "outdoor"}));

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return input_error;
    }

    try {
        if (*kpi) return cmd_kpi(bands, format, out);
        if (*max_range) return cmd_max_range(detail::scenario_with_override(scenario, band_override), text_format, out);
        if (*feas) return cmd_feasibility(detail::scenario_with_override(scenario, band_override), text_format, out);
        if (*simulate) {
            if (*seed_opt) sim.seed = seed;
            return cmd_simulate(detail::scenario_with_override(scenario, band_override), sim, out);
        }
        if (*rcs) return cmd_rcs_estimate(rcs_band, peak_db, range_m, placement, out);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const SteeringError &e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
    return internal_error;
}

} // namespace isac::cli

#endif // ISAC_TOOLS_CLI_HPP
