// SPDX-License-Identifier: Apache-2.0
//
// Resolution and ambiguity limits, and the combiner that turns every limit into an
// achievable sensing range.

#ifndef ISAC_RESOLUTION_HPP
#define ISAC_RESOLUTION_HPP

#include "isac/accuracy.hpp"
#include "isac/link_budget.hpp"
#include "isac/quantization.hpp"
#include "isac/system_model.hpp"
#include "isac/target.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isac {

struct Resolutions {
    double range_m = 0.0;     // rho_r
    double speed_mps = 0.0;   // rho_s
    double vertical_naf = 0.0;   // rho_z, sum co-array of 2R-1 rows
    double horizontal_naf = 0.0; // rho_x, sum co-array of 2C-1 columns
};

inline Resolutions resolutions(const SystemConfig &cfg) {
    const double c0 = constants::speed_of_light;
    return {c0 / (2.0 * cfg.occupied_bandwidth()),
            c0 / (2.0 * cfg.prs.frame_duration_s * cfg.carrier_frequency_hz),
            1.0 / (2.0 * cfg.array.rows - 1.0),
            1.0 / (2.0 * cfg.array.cols - 1.0)};
}

/// Angular resolution at the given incidence, in degrees.
inline AngularSpread angular_resolution(const SystemConfig &cfg, double azimuth_deg, double elevation_deg) {
    const Resolutions res = resolutions(cfg);
    try {
        return naf_offsets_to_angles(cfg, azimuth_deg, elevation_deg, res.vertical_naf, res.horizontal_naf,
                                     "resolution");
    } catch (const SteeringError &) {
        throw SteeringError("unresolvable at this steering");
    }
}

struct SpatialResolution {
    double vertical_m = 0.0;   // rho_v
    double horizontal_m = 0.0; // rho_h
};

inline SpatialResolution spatial_resolution(const SystemConfig &cfg, double azimuth_deg, double elevation_deg,
                                            double range_m) {
    if (!(range_m >= 0.0)) throw InputError("range must be non-negative", "range_m");
    const AngularSpread ang = angular_resolution(cfg, azimuth_deg, elevation_deg);
    return {range_m * std::sin(deg_to_rad(ang.elevation_deg)), range_m * std::sin(deg_to_rad(ang.azimuth_deg))};
}

struct ResolutionRange {
    std::optional<double> vertical_m;   // r_v*
    std::optional<double> horizontal_m; // r_h*
    std::vector<std::string> warnings;
};

/// Farthest range at which the array still separates objects spaced by the required
/// vertical/horizontal distance. Absent requirements yield absent limits.
inline ResolutionRange resolution_limited_range(const SystemConfig &cfg, double azimuth_deg, double elevation_deg,
                                                std::optional<double> required_vertical_m,
                                                std::optional<double> required_horizontal_m) {
    if (required_vertical_m && !(*required_vertical_m > 0.0))
        throw InputError("must be positive", "requirements.vertical_resolution_m");
    if (required_horizontal_m && !(*required_horizontal_m > 0.0))
        throw InputError("must be positive", "requirements.horizontal_resolution_m");

    ResolutionRange out;
    if (!required_vertical_m && !required_horizontal_m) return out;
    const AngularSpread ang = angular_resolution(cfg, azimuth_deg, elevation_deg);
    auto limit = [&](double required, double angle_deg, const char *axis) {
        const double s = std::sin(deg_to_rad(angle_deg));
        if (s <= 0.0) {
            out.warnings.push_back(std::string("zero ") + axis + " angular resolution: range limit is unbounded");
            return std::numeric_limits<double>::infinity();
        }
        return required / s;
    };
    if (required_vertical_m) out.vertical_m = limit(*required_vertical_m, ang.elevation_deg, "vertical");
    if (required_horizontal_m) out.horizontal_m = limit(*required_horizontal_m, ang.azimuth_deg, "horizontal");
    return out;
}

struct UnambiguousLimits {
    double range_m = 0.0;   // c0 / (2 subcarrier_spacing)
    double speed_mps = 0.0; // c0 / (2 f_c T_D)
};

inline UnambiguousLimits unambiguous_limits(const SystemConfig &cfg) {
    const double c0 = constants::speed_of_light;
    return {c0 / (2.0 * cfg.subcarrier_spacing_hz),
            c0 / (2.0 * cfg.carrier_frequency_hz * doppler_sampling_period(cfg))};
}

enum class Constraint { Noise, Quantization, Resolution, Ambiguity };

inline std::string_view to_string(Constraint c) {
    switch (c) {
    case Constraint::Noise: return "noise";
    case Constraint::Quantization: return "quantization";
    case Constraint::Resolution: return "resolution";
    case Constraint::Ambiguity: return "ambiguity";
    }
    return "unknown";
}

struct Requirements {
    std::optional<double> horizontal_resolution_m; // rho_h*
    std::optional<double> vertical_resolution_m;   // rho_v*
    std::optional<double> range_m;                 // range that must be covered

    bool has_resolution() const { return horizontal_resolution_m || vertical_resolution_m; }
};

struct RangeLimits {
    double noise_m = 0.0;                 // r_n*
    std::optional<double> quantization_m; // r_q*
    std::optional<double> vertical_m;     // r_v*
    std::optional<double> horizontal_m;   // r_h*
    std::optional<double> resolution_m;   // max(r_v*, r_h*) when the angular combiner is used
    double ambiguity_m = 0.0;             // r_u*
    double achievable_m = 0.0;            // r*
    Constraint binding = Constraint::Ambiguity;
    std::vector<std::string> warnings;
};

/// Most stringent of the noise, quantization, angular-resolution and ambiguity limits.
/// With `use_angular_resolution` false the resolution term is dropped, which is the
/// right model when range/speed resolution already separates the target from clutter.
/// Ties resolve in the order noise, quantization, resolution, ambiguity.
inline RangeLimits achievable_range(const SystemConfig &cfg, const Target &target, Watts tx_power,
                                    const Environment &env, const Requirements &req, double min_snr,
                                    bool use_angular_resolution) {
    RangeLimits out;
    out.noise_m = max_range_noise(cfg, target.rcs_m2, tx_power, min_snr);
    if (!env.empty()) out.quantization_m = max_range_quant(cfg, target.rcs_m2, env, min_snr).range_m;
    if (use_angular_resolution && req.has_resolution()) {
        ResolutionRange rr = resolution_limited_range(cfg, target.azimuth_deg, target.elevation_deg,
                                                      req.vertical_resolution_m, req.horizontal_resolution_m);
        out.vertical_m = rr.vertical_m;
        out.horizontal_m = rr.horizontal_m;
        out.warnings = std::move(rr.warnings);
        // Separation in either direction suffices.
        out.resolution_m = std::max(rr.vertical_m.value_or(0.0), rr.horizontal_m.value_or(0.0));
    }
    out.ambiguity_m = unambiguous_limits(cfg).range_m;

    const std::array<std::pair<Constraint, std::optional<double>>, 4> candidates{{
        {Constraint::Noise, out.noise_m},
        {Constraint::Quantization, out.quantization_m},
        {Constraint::Resolution, out.resolution_m},
        {Constraint::Ambiguity, out.ambiguity_m},
    }};
    bool have = false;
    for (const auto &[kind, value] : candidates) {
        if (!value) continue;
        if (!have || *value < out.achievable_m) {
            out.achievable_m = *value;
            out.binding = kind;
            have = true;
        }
    }
    if (!have) throw InputError("no range limit could be computed");
    return out;
}

} // namespace isac

#endif // ISAC_RESOLUTION_HPP
