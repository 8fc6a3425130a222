// SPDX-License-Identifier: Apache-2.0
//
// Mono-static radar link budget under thermal noise.

#ifndef ISAC_LINK_BUDGET_HPP
#define ISAC_LINK_BUDGET_HPP

#include "isac/quantities.hpp"
#include "isac/system_model.hpp"

#include <cmath>

namespace isac {

/// Default detection operating point: 17 dB after all processing gains.
inline const double default_min_snr = db_to_linear(17.0);

struct SnrBreakdown {
    Watts received_power;
    Watts noise_power;
    double per_symbol_snr = 0.0;  // gamma_S
    double processing_gain = 0.0; // N * M
    double snr = 0.0;             // gamma = gamma_S * N * M
};

/// Two-way free-space radar equation with TX and RX array gains.
inline Watts received_power(const SystemConfig &cfg, double rcs_m2, double range_m, Watts tx_power) {
    if (!(range_m > 0.0)) throw InputError("range must be positive", "range_m");
    if (!(rcs_m2 > 0.0)) throw InputError("radar cross section must be positive", "rcs_m2");
    const double c0 = constants::speed_of_light;
    const double f = cfg.carrier_frequency_hz;
    const double r2 = range_m * range_m;
    return Watts{tx_power.value * array_gain(cfg) * receive_gain(cfg) * rcs_m2 * c0 * c0 /
                 (constants::four_pi_cubed * r2 * r2 * f * f)};
}

/// P_N = N0 * F * N * subcarrier_spacing.
inline Watts noise_power(const SystemConfig &cfg) {
    return Watts{thermal_noise_density() * cfg.noise_figure.value * cfg.occupied_bandwidth()};
}

inline SnrBreakdown snr(const SystemConfig &cfg, double rcs_m2, double range_m, Watts tx_power) {
    SnrBreakdown out;
    out.received_power = received_power(cfg, rcs_m2, range_m, tx_power);
    out.noise_power = noise_power(cfg);
    out.per_symbol_snr = out.received_power.value / out.noise_power.value;
    out.processing_gain = static_cast<double>(cfg.num_subcarriers) * symbols_per_frame(cfg);
    out.snr = out.per_symbol_snr * out.processing_gain;
    return out;
}

/// Range at which the post-processing SNR drops to `min_snr`. The subcarrier count cancels
/// between processing gain and noise bandwidth.
inline double max_range_noise(const SystemConfig &cfg, double rcs_m2, Watts tx_power, double min_snr) {
    if (!(min_snr > 0.0)) throw InputError("minimum SNR must be positive", "min_snr");
    if (!(rcs_m2 > 0.0)) throw InputError("radar cross section must be positive", "rcs_m2");
    const double c0 = constants::speed_of_light;
    const double f = cfg.carrier_frequency_hz;
    const double num = tx_power.value * array_gain(cfg) * receive_gain(cfg) * rcs_m2 * c0 * c0 * symbols_per_frame(cfg);
    const double den = min_snr * constants::four_pi_cubed * f * f * thermal_noise_density() *
                       cfg.noise_figure.value * cfg.subcarrier_spacing_hz;
    return std::pow(num / den, 0.25);
}

/// Inverts the radar equation for the RCS given an absolute periodogram peak power
/// (received power times the N*M processing gain) measured at range `range_m`.
inline double estimate_rcs(const SystemConfig &cfg, double peak_power_w, double range_m, Watts tx_power) {
    if (!(peak_power_w > 0.0)) throw InputError("peak power must be positive", "peak");
    if (!(range_m > 0.0)) throw InputError("range must be positive", "range_m");
    const double c0 = constants::speed_of_light;
    const double f = cfg.carrier_frequency_hz;
    const double r2 = range_m * range_m;
    const double nm = static_cast<double>(cfg.num_subcarriers) * symbols_per_frame(cfg);
    return peak_power_w * constants::four_pi_cubed * r2 * r2 * f * f /
           (tx_power.value * nm * array_gain(cfg) * receive_gain(cfg) * c0 * c0);
}

} // namespace isac

#endif // ISAC_LINK_BUDGET_HPP
