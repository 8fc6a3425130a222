// SPDX-License-Identifier: Apache-2.0
//
// Cramer-Rao bounds for range, speed and the two array axes of an OFDM radar
// periodogram, plus their mapping from normalized angular frequency to angles.

#ifndef ISAC_ACCURACY_HPP
#define ISAC_ACCURACY_HPP

#include "isac/quantities.hpp"
#include "isac/system_model.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac {

/// Requested steering has no valid angle mapping (end-fire degeneracy).
class SteeringError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {
// sqrt(6 / ((K^2 - 1) gamma)); empty for a single sample.
inline std::optional<double> crlb_core(long long samples, double snr) {
    if (samples < 2) return std::nullopt;
    const double k = static_cast<double>(samples);
    return std::sqrt(6.0 / ((k * k - 1.0) * snr));
}

inline void check_snr(double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw InputError("SNR must be positive", "snr");
}
} // namespace detail

inline std::optional<double> crlb_range(double subcarrier_spacing_hz, long long subcarriers, double snr) {
    detail::check_snr(snr);
    auto core = detail::crlb_core(subcarriers, snr);
    if (!core) return std::nullopt;
    return constants::speed_of_light / (4.0 * constants::pi * subcarrier_spacing_hz) * *core;
}

inline std::optional<double> crlb_speed(double carrier_hz, double symbol_period_s, long long symbols, double snr) {
    detail::check_snr(snr);
    auto core = detail::crlb_core(symbols, snr);
    if (!core) return std::nullopt;
    return constants::speed_of_light / (4.0 * constants::pi * carrier_hz * symbol_period_s) * *core;
}

/// NAF standard deviation for an axis with `elements` antennas.
inline std::optional<double> crlb_naf(long long elements, double snr) {
    detail::check_snr(snr);
    auto core = detail::crlb_core(elements, snr);
    if (!core) return std::nullopt;
    return *core / (2.0 * constants::pi);
}

struct CrlbAccuracy {
    std::optional<double> range_m;      // sigma_r
    std::optional<double> speed_mps;    // sigma_s
    std::optional<double> vertical_naf; // sigma_z (rows)
    std::optional<double> horizontal_naf; // sigma_x (columns)
};

/// Speed bound uses the OFDM symbol duration T_0 as the slow-time period.
inline CrlbAccuracy crlb_accuracy(const SystemConfig &cfg, double snr) {
    CrlbAccuracy out;
    out.range_m = crlb_range(cfg.subcarrier_spacing_hz, cfg.num_subcarriers, snr);
    out.speed_mps = crlb_speed(cfg.carrier_frequency_hz, cfg.symbol_duration_s, symbols_per_frame(cfg), snr);
    out.vertical_naf = crlb_naf(cfg.array.rows, snr);
    out.horizontal_naf = crlb_naf(cfg.array.cols, snr);
    return out;
}

struct ClockInflated {
    double range_m = 0.0;
    double speed_mps = 0.0;
};

/// Root-sum-square of thermal-noise bounds and residual clock timing/frequency errors.
inline ClockInflated clock_inflate(double sigma_range, double sigma_speed, double timing_std_s, double frequency_std_hz,
                                   const SystemConfig &cfg) {
    if (timing_std_s < 0.0) throw InputError("must be non-negative", "clock.timing_std_s");
    if (frequency_std_hz < 0.0) throw InputError("must be non-negative", "clock.frequency_std_hz");
    const double c0 = constants::speed_of_light;
    const double timing = c0 * timing_std_s;
    const double freq = c0 / cfg.carrier_frequency_hz * frequency_std_hz;
    return {std::hypot(sigma_range, timing), std::hypot(sigma_speed, freq)};
}

struct NafPair {
    double vertical = 0.0;   // eta, from elevation
    double horizontal = 0.0; // ell, from azimuth and elevation
};

inline NafPair angles_to_naf(const SystemConfig &cfg, double azimuth_deg, double elevation_deg) {
    const double phi = deg_to_rad(elevation_deg);
    const double theta = deg_to_rad(azimuth_deg);
    const double cos_phi = std::cos(phi);
    if (!(std::abs(elevation_deg) < 90.0) || std::abs(cos_phi) < 1e-12) {
        throw InputError("elevation must be strictly inside (-90, 90) degrees", "elevation_deg");
    }
    return {cfg.array.row_spacing * std::sin(phi), cfg.array.col_spacing * std::sin(theta) / cos_phi};
}

namespace detail {
// Larger |asin(scale * (center +- delta)) - angle| over the branches that stay in domain.
inline std::optional<double> worst_case_offset(double scale, double center, double delta, double angle_rad) {
    std::optional<double> worst;
    for (double sign : {1.0, -1.0}) {
        const double arg = scale * (center + sign * delta);
        if (arg < -1.0 || arg > 1.0) continue;
        const double off = std::asin(arg) - angle_rad;
        if (!worst || std::abs(off) > std::abs(*worst)) worst = off;
    }
    return worst;
}
} // namespace detail

struct AngularSpread {
    double elevation_deg = 0.0; // sigma_phi or rho_phi
    double azimuth_deg = 0.0;   // sigma_theta or rho_theta
};

/// Maps NAF-domain offsets to angle offsets at a given incidence. The worse of the
/// +/- branches is reported, as a non-negative magnitude in degrees.
inline AngularSpread naf_offsets_to_angles(const SystemConfig &cfg, double azimuth_deg, double elevation_deg,
                                           double vertical_naf, double horizontal_naf, const char *what) {
    const NafPair naf = angles_to_naf(cfg, azimuth_deg, elevation_deg);
    const double phi = deg_to_rad(elevation_deg);
    const double theta = deg_to_rad(azimuth_deg);
    const auto el = detail::worst_case_offset(1.0 / cfg.array.row_spacing, naf.vertical, vertical_naf, phi);
    const auto az =
        detail::worst_case_offset(std::cos(phi) / cfg.array.col_spacing, naf.horizontal, horizontal_naf, theta);
    if (!el || !az) throw SteeringError(std::string(what) + " undefined at this steering");
    return {std::abs(rad_to_deg(*el)), std::abs(rad_to_deg(*az))};
}

inline AngularSpread naf_accuracy_to_angles(const SystemConfig &cfg, double azimuth_deg, double elevation_deg,
                                            double sigma_z, double sigma_x) {
    return naf_offsets_to_angles(cfg, azimuth_deg, elevation_deg, sigma_z, sigma_x, "accuracy");
}

struct ClockStats {
    double timing_std_s = 0.0;
    double frequency_std_hz = 0.0;
};

struct AccuracyReport {
    double snr = 0.0;
    std::optional<double> range_m;
    std::optional<double> speed_mps;
    std::optional<double> vertical_naf;
    std::optional<double> horizontal_naf;
    std::optional<double> elevation_deg;
    std::optional<double> azimuth_deg;
    std::optional<ClockInflated> clock_inflated;
    bool below_detection_snr = false;
    std::vector<std::string> warnings;
};

inline AccuracyReport accuracy_report(const SystemConfig &cfg, double snr, double azimuth_deg, double elevation_deg,
                                      const std::optional<ClockStats> &clock, double min_snr) {
    AccuracyReport rep;
    rep.snr = snr;
    const CrlbAccuracy crlb = crlb_accuracy(cfg, snr);
    rep.range_m = crlb.range_m;
    rep.speed_mps = crlb.speed_mps;
    rep.vertical_naf = crlb.vertical_naf;
    rep.horizontal_naf = crlb.horizontal_naf;
    rep.below_detection_snr = snr < min_snr;
    if (rep.below_detection_snr) rep.warnings.emplace_back("SNR below detection threshold; bounds are not attainable");

    if (crlb.vertical_naf && crlb.horizontal_naf) {
        try {
            const auto ang = naf_accuracy_to_angles(cfg, azimuth_deg, elevation_deg, *crlb.vertical_naf, *crlb.horizontal_naf);
            rep.elevation_deg = ang.elevation_deg;
            rep.azimuth_deg = ang.azimuth_deg;
        } catch (const SteeringError &e) {
            rep.warnings.emplace_back(e.what());
        }
    } else {
        rep.warnings.emplace_back("single-element array axis: angular accuracy unavailable");
    }

    if (clock && rep.range_m && rep.speed_mps) {
        rep.clock_inflated = clock_inflate(*rep.range_m, *rep.speed_mps, clock->timing_std_s, clock->frequency_std_hz, cfg);
    }
    return rep;
}

} // namespace isac

#endif // ISAC_ACCURACY_HPP
