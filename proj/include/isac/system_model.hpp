// SPDX-License-Identifier: Apache-2.0
//
// Frequency-range system parameterizations and the quantities derived from them
// (array gain, sensing symbols per frame, EMF-limited indoor power, Doppler sampling).

#ifndef ISAC_SYSTEM_MODEL_HPP
#define ISAC_SYSTEM_MODEL_HPP

#include "isac/quantities.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace isac {

enum class Band { FR1, FR2, FR3, Custom };

inline std::string_view to_string(Band band) {
    switch (band) {
    case Band::FR1: return "FR1";
    case Band::FR2: return "FR2";
    case Band::FR3: return "FR3";
    case Band::Custom: return "custom";
    }
    return "custom";
}

/// Case-insensitive "fr1"/"FR1" etc.; anything else is Custom.
inline Band band_from_string(std::string_view name) {
    std::string lower;
    for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "fr1") return Band::FR1;
    if (lower == "fr2") return Band::FR2;
    if (lower == "fr3") return Band::FR3;
    return Band::Custom;
}

/// Uniform rectangular array. Spacings are in wavelengths.
struct ArrayGeometry {
    int rows = 1;
    int cols = 1;
    double row_spacing = 0.5;
    double col_spacing = 0.5;
};

/// Downlink positioning-reference-signal allocation used as the sensing waveform.
struct PrsConfig {
    int symbols_per_slot = 12; // L_PRS
    int comb_size = 2;         // K_comb
    double frame_duration_s = 10e-3;
    double tdd_duty_cycle = 0.8; // T*
};

struct SystemConfig {
    Band band = Band::Custom;
    double carrier_frequency_hz = 0.0;
    double subcarrier_spacing_hz = 0.0;
    int num_subcarriers = 0;
    double symbol_duration_s = 0.0; // including cyclic prefix
    std::optional<double> nominal_bandwidth_hz;

    Gain noise_figure{Gain::from_db(8.0)};
    Gain element_gain{2.0};
    ArrayGeometry array;
    std::optional<Gain> receive_array_gain; // G_R override for asymmetric studies

    Watts outdoor_power{1.0};
    std::optional<Watts> indoor_power_override;

    int adc_bits = 12;
    std::optional<int> fft_bits;
    PrsConfig prs;
    Gain papr_penalty{Gain::from_db(8.0)};
    Gain agc_loss{1.0}; // extra quantization loss; 1 = perfect AGC

    double emf_power_reduction = 0.25; // P*
    double emf_density_limit = 10.0;   // S0 [W/m^2]
    double emf_reference_distance = 1.0; // d' [m]

    std::optional<int> symbols_per_frame_override;

    double wavelength() const { return constants::speed_of_light / carrier_frequency_hz; }
    double occupied_bandwidth() const { return num_subcarriers * subcarrier_spacing_hz; }
};

/// Throws InputError naming the first invalid field.
inline void validate(const SystemConfig &cfg) {
    auto require = [](bool ok, const char *field, const char *what) {
        if (!ok) throw InputError(what, field);
    };
    require(std::isfinite(cfg.carrier_frequency_hz) && cfg.carrier_frequency_hz > 0, "carrier_frequency_hz", "must be positive");
    require(std::isfinite(cfg.subcarrier_spacing_hz) && cfg.subcarrier_spacing_hz > 0, "subcarrier_spacing_hz", "must be positive");
    require(cfg.num_subcarriers >= 2, "num_subcarriers", "must be at least 2");
    // 1e-9 relative slack: tabulated durations are rounded to 10 ns.
    require(cfg.symbol_duration_s * (1.0 + 1e-9) >= 1.0 / cfg.subcarrier_spacing_hz, "symbol_duration_s",
            "must be at least 1/subcarrier_spacing");
    require(cfg.noise_figure.value >= 1.0, "noise_figure_db", "must be >= 0 dB");
    require(cfg.element_gain.value > 0, "element_gain_db", "must be finite");
    require(cfg.array.rows >= 1, "array.rows", "must be >= 1");
    require(cfg.array.cols >= 1, "array.cols", "must be >= 1");
    require(cfg.array.row_spacing > 0, "array.row_spacing_wavelengths", "must be positive");
    require(cfg.array.col_spacing > 0, "array.col_spacing_wavelengths", "must be positive");
    require(cfg.outdoor_power.value > 0, "outdoor_power_dbm", "must be finite");
    require(cfg.adc_bits >= 1, "adc_bits", "must be >= 1");
    require(!cfg.fft_bits || *cfg.fft_bits >= 1, "fft_bits", "must be >= 1");
    require(cfg.papr_penalty.value >= 1.0, "papr_db", "must be >= 0 dB");
    require(cfg.agc_loss.value > 0 && cfg.agc_loss.value <= 1.0, "agc_loss_db", "must be <= 0 dB");
    require(cfg.emf_power_reduction > 0 && cfg.emf_power_reduction <= 1, "emf_power_reduction", "must be in (0, 1]");
    require(cfg.emf_density_limit > 0, "emf_density_limit_w_m2", "must be positive");
    require(cfg.emf_reference_distance > 0, "emf_reference_distance_m", "must be positive");

    const auto &prs = cfg.prs;
    auto allowed_length = [](int v) { return v == 2 || v == 4 || v == 6 || v == 12; };
    auto allowed_comb = [](int v) { return v == 1 || v == 2 || v == 4 || v == 6 || v == 12; };
    require(allowed_length(prs.symbols_per_slot), "prs.symbols_per_slot", "must be one of 2, 4, 6, 12");
    require(allowed_comb(prs.comb_size), "prs.comb_size", "must be one of 1, 2, 4, 6, 12");
    require(prs.symbols_per_slot % prs.comb_size == 0, "prs.comb_size", "must divide symbols_per_slot");
    require(prs.frame_duration_s > 0, "prs.frame_duration_s", "must be positive");
    require(prs.tdd_duty_cycle > 0 && prs.tdd_duty_cycle <= 1, "prs.tdd_duty_cycle", "must be in (0, 1]");
    require(!cfg.symbols_per_frame_override || *cfg.symbols_per_frame_override >= 1, "symbols_per_frame",
            "must be >= 1");

    if (cfg.nominal_bandwidth_hz) {
        const double nominal = *cfg.nominal_bandwidth_hz;
        require(nominal > 0, "bandwidth_hz", "must be positive");
        // Occupied bandwidth excludes guard bands; spectral utilisation is at least 90%.
        require(cfg.occupied_bandwidth() <= nominal * (1.0 + 1e-12), "num_subcarriers",
                "occupied bandwidth N*subcarrier_spacing exceeds bandwidth_hz");
        require(cfg.occupied_bandwidth() >= 0.9 * nominal, "num_subcarriers",
                "occupied bandwidth is below 90% of bandwidth_hz");
    }
}

/// G_T = R * C * G_E.
inline double array_gain(const SystemConfig &cfg) {
    return cfg.array.rows * cfg.array.cols * cfg.element_gain.value;
}

inline double receive_gain(const SystemConfig &cfg) {
    return cfg.receive_array_gain ? cfg.receive_array_gain->value : array_gain(cfg);
}

/// Slot duration of the standard numerology (14 symbols/slot, 1 ms at 15 kHz).
inline double slot_duration(double subcarrier_spacing_hz) {
    const double ratio = subcarrier_spacing_hz / 15e3;
    const double mu = std::log2(ratio);
    const double mu_int = std::round(mu);
    if (std::abs(mu - mu_int) > 1e-9 || mu_int < 0 || mu_int > 4) {
        throw InputError("unsupported numerology: subcarrier spacing must be 15 kHz * 2^mu with mu in 0..4",
                         "subcarrier_spacing_hz");
    }
    return 1e-3 / std::exp2(mu_int);
}

/// Sensing OFDM symbols per radio frame on one subcarrier, after TDD overhead.
inline int symbols_per_frame(const SystemConfig &cfg) {
    if (cfg.symbols_per_frame_override) return *cfg.symbols_per_frame_override;
    const double slot = slot_duration(cfg.subcarrier_spacing_hz);
    const double slots = cfg.prs.frame_duration_s / slot;
    if (std::abs(slots - std::round(slots)) > 1e-6) {
        throw InputError("frame duration is not a whole number of slots", "prs.frame_duration_s");
    }
    const int per_slot = cfg.prs.symbols_per_slot / cfg.prs.comb_size;
    return static_cast<int>(std::floor(std::round(slots) * per_slot * cfg.prs.tdd_duty_cycle + 1e-9));
}

/// The same subcarrier is revisited every K_comb symbols, so slow-time sampling is K_comb * T_0.
inline double doppler_sampling_period(const SystemConfig &cfg) {
    return cfg.prs.comb_size * cfg.symbol_duration_s;
}

struct IndoorPower {
    Watts power;     // what indoor scenarios transmit
    Watts emf_limit; // S0 * 4 pi d'^2 / (G_T T* P*)
    std::optional<std::string> warning;
};

inline IndoorPower indoor_power_limit(const SystemConfig &cfg) {
    const double d = cfg.emf_reference_distance;
    const double limit = cfg.emf_density_limit * 4.0 * constants::pi * d * d /
                         (array_gain(cfg) * cfg.prs.tdd_duty_cycle * cfg.emf_power_reduction);
    IndoorPower out{Watts{limit}, Watts{limit}, std::nullopt};
    if (cfg.indoor_power_override) {
        out.power = *cfg.indoor_power_override;
        if (out.power.value > limit) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "indoor power %.2f dBm exceeds the EMF limit of %.2f dBm",
                          out.power.dbm(), out.emf_limit.dbm());
            out.warning = buf;
        }
    }
    return out;
}

struct DerivedParams {
    double array_gain = 0.0;
    int symbols_per_frame = 0;
    double doppler_sampling_period = 0.0;
    Watts indoor_power;
};

inline DerivedParams derive(const SystemConfig &cfg) {
    return DerivedParams{array_gain(cfg), symbols_per_frame(cfg), doppler_sampling_period(cfg),
                         indoor_power_limit(cfg).power};
}

inline SystemConfig builtin_config(Band band) {
    SystemConfig cfg;
    cfg.band = band;
    cfg.noise_figure = Gain::from_db(8.0);
    cfg.element_gain = Gain{2.0};
    cfg.adc_bits = 12;
    switch (band) {
    case Band::FR1:
        cfg.carrier_frequency_hz = 3.5e9;
        cfg.nominal_bandwidth_hz = 200e6;
        cfg.subcarrier_spacing_hz = 30e3;
        cfg.symbol_duration_s = 35.67e-6;
        cfg.num_subcarriers = 6552;
        cfg.array = ArrayGeometry{24, 8, 0.7, 0.5};
        cfg.outdoor_power = Watts::from_dbm(49.0);
        cfg.indoor_power_override = Watts::from_dbm(32.2);
        break;
    case Band::FR2:
        cfg.carrier_frequency_hz = 28e9;
        cfg.nominal_bandwidth_hz = 1600e6;
        cfg.subcarrier_spacing_hz = 120e3;
        cfg.symbol_duration_s = 8.92e-6;
        cfg.num_subcarriers = 12672;
        cfg.array = ArrayGeometry{32, 32, 0.5, 0.5};
        cfg.outdoor_power = Watts::from_dbm(36.0);
        cfg.indoor_power_override = Watts::from_dbm(25.0);
        break;
    case Band::FR3:
        cfg.carrier_frequency_hz = 7e9;
        cfg.nominal_bandwidth_hz = 400e6;
        cfg.subcarrier_spacing_hz = 60e3;
        cfg.symbol_duration_s = 17.84e-6;
        cfg.num_subcarriers = 6480;
        cfg.array = ArrayGeometry{32, 32, 0.5, 0.5};
        cfg.outdoor_power = Watts::from_dbm(49.0);
        cfg.indoor_power_override = Watts::from_dbm(25.0);
        break;
    case Band::Custom:
        throw InputError("no built-in parameterization for a custom band", "band");
    }
    return cfg;
}

} // namespace isac

#endif // ISAC_SYSTEM_MODEL_HPP
