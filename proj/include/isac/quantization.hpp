// SPDX-License-Identifier: Apache-2.0
//
// Quantization-noise limits: the strongest return sets the ADC full scale, so weak
// targets are buried once their echo falls below the quantizer's dynamic range.

#ifndef ISAC_QUANTIZATION_HPP
#define ISAC_QUANTIZATION_HPP

#include "isac/quantities.hpp"
#include "isac/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace isac {

struct SelfInterference {
    double isolation = 1e-8; // alpha, linear, <= 1
    double separation_m = 0.1;

    /// -80 dB isolation at a TX-RX separation equal to the aperture diagonal.
    static SelfInterference default_for(const SystemConfig &cfg) {
        const double lambda = cfg.wavelength();
        const double h = cfg.array.rows * cfg.array.row_spacing * lambda;
        const double w = cfg.array.cols * cfg.array.col_spacing * lambda;
        return SelfInterference{db_to_linear(-80.0), std::hypot(h, w)};
    }
};

struct ClutterObject {
    double rcs_m2 = 1.0;
    double range_m = 10.0;
};

struct Environment {
    std::vector<ClutterObject> clutter;
    std::optional<SelfInterference> self_interference;

    bool empty() const { return clutter.empty() && !self_interference; }
};

struct StrongestReturn {
    enum class Source { Clutter, SelfInterference };
    double level = 0.0; // max(Psi_t / r_t^4, alpha 4 pi / r'^2)
    Source source = Source::Clutter;
    std::size_t clutter_index = 0;
};

inline void validate(const Environment &env) {
    for (std::size_t i = 0; i < env.clutter.size(); ++i) {
        const auto &obj = env.clutter[i];
        const std::string path = "clutter[" + std::to_string(i) + "]";
        if (!(obj.rcs_m2 > 0.0) || !std::isfinite(obj.rcs_m2)) throw InputError("must be positive", path + ".rcs_m2");
        if (!(obj.range_m > 0.0) || !std::isfinite(obj.range_m)) throw InputError("must be positive", path + ".range_m");
    }
    if (env.self_interference) {
        const auto &si = *env.self_interference;
        if (!(si.isolation > 0.0 && si.isolation <= 1.0)) throw InputError("must be in (0, 1]", "self_interference.isolation");
        if (!(si.separation_m > 0.0)) throw InputError("must be positive", "self_interference.separation_m");
    }
}

inline StrongestReturn strongest_return(const Environment &env) {
    if (env.empty()) throw InputError("environment has neither clutter nor self-interference", "clutter");
    validate(env);
    StrongestReturn best;
    bool have = false;
    for (std::size_t i = 0; i < env.clutter.size(); ++i) {
        const auto &obj = env.clutter[i];
        const double r2 = obj.range_m * obj.range_m;
        const double level = obj.rcs_m2 / (r2 * r2);
        if (!have || level > best.level) {
            best = {level, StrongestReturn::Source::Clutter, i};
            have = true;
        }
    }
    if (env.self_interference) {
        const auto &si = *env.self_interference;
        const double level = si.isolation * 4.0 * constants::pi / (si.separation_m * si.separation_m);
        if (!have || level > best.level) best = {level, StrongestReturn::Source::SelfInterference, 0};
    }
    return best;
}

/// Ideal uniform quantizer: (2^Q)^2.
inline double sqnr(int bits) {
    if (bits < 1) throw InputError("quantizer needs at least one bit", "bits");
    return std::ldexp(1.0, 2 * bits);
}

struct ReceiverSqnr {
    double adc = 0.0;           // gamma_Q, includes the N*M processing gain
    std::optional<double> fft;  // SQNR of the FFT word length, no processing gain
    double effective = 0.0;     // gamma_q = min(gamma_Q, SQNR_Q')
};

inline ReceiverSqnr receiver_sqnr(const SystemConfig &cfg) {
    ReceiverSqnr out;
    const double nm = static_cast<double>(cfg.num_subcarriers) * symbols_per_frame(cfg);
    out.adc = sqnr(cfg.adc_bits) * nm / cfg.papr_penalty.value * cfg.agc_loss.value;
    out.effective = out.adc;
    if (cfg.fft_bits) {
        out.fft = sqnr(*cfg.fft_bits);
        out.effective = std::min(out.adc, *out.fft);
    }
    return out;
}

struct QuantizationRange {
    double range_m = 0.0;
    StrongestReturn dominator;
    /// Same limit written relative to the dominating clutter object; present only when
    /// clutter dominates. Agrees with `range_m` to rounding.
    std::optional<double> relative_form_m;
};

inline QuantizationRange max_range_quant(const SystemConfig &cfg, double rcs_m2, const Environment &env, double min_snr) {
    if (!(rcs_m2 > 0.0)) throw InputError("radar cross section must be positive", "rcs_m2");
    if (!(min_snr > 0.0)) throw InputError("minimum SNR must be positive", "min_snr");
    QuantizationRange out;
    out.dominator = strongest_return(env);
    const double gq = receiver_sqnr(cfg).effective;
    out.range_m = std::pow(rcs_m2 * gq / (out.dominator.level * min_snr), 0.25);
    if (out.dominator.source == StrongestReturn::Source::Clutter) {
        const auto &obj = env.clutter[out.dominator.clutter_index];
        out.relative_form_m = obj.range_m * std::pow(rcs_m2 * gq / (obj.rcs_m2 * min_snr), 0.25);
    }
    return out;
}

} // namespace isac

#endif // ISAC_QUANTIZATION_HPP
