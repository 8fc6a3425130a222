// SPDX-License-Identifier: Apache-2.0
//
// Noise-normalized synthesis of the equalized OFDM radar symbol grid and a uniform
// mid-rise quantizer for ADC / FFT word-length studies.

#ifndef ISAC_SIMULATION_HPP
#define ISAC_SIMULATION_HPP

#include "isac/accuracy.hpp"
#include "isac/link_budget.hpp"
#include "isac/resolution.hpp"
#include "isac/system_model.hpp"
#include "isac/target.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace isac {

struct SimTarget {
    Target target;
    std::optional<double> per_sample_snr; // overrides the link budget for this target
    std::optional<double> phase_rad;      // fixed echo phase; uniform random when empty
};

struct SimScene {
    SystemConfig config;
    std::vector<SimTarget> targets;
    Watts tx_power{1.0};
    std::optional<double> per_sample_snr; // default override for targets without their own
    std::uint64_t seed = 0;
    int subcarriers = 256;
    int symbols = 64;
    int cols = 1;
    int rows = 1;
    bool thermal_noise = true;
};

/// Complex samples indexed (subcarrier, symbol, column, row); subcarrier varies fastest.
struct SymbolGrid {
    int subcarriers = 0;
    int symbols = 0;
    int cols = 0;
    int rows = 0;
    std::vector<std::complex<double>> data;
    std::vector<std::string> warnings;

    std::size_t index(int n, int m, int c, int r) const {
        return ((static_cast<std::size_t>(r) * cols + c) * symbols + m) * subcarriers + n;
    }
    std::complex<double> &at(int n, int m, int c, int r) { return data[index(n, m, c, r)]; }
    const std::complex<double> &at(int n, int m, int c, int r) const { return data[index(n, m, c, r)]; }
};

namespace detail {
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}
} // namespace detail

inline void validate(const SimScene &scene) {
    validate(scene.config);
    if (scene.subcarriers < 1) throw InputError("must be >= 1", "simulation.subcarriers");
    if (scene.symbols < 1) throw InputError("must be >= 1", "simulation.symbols");
    if (scene.cols < 1) throw InputError("must be >= 1", "simulation.cols");
    if (scene.rows < 1) throw InputError("must be >= 1", "simulation.rows");
    if (scene.per_sample_snr && !(*scene.per_sample_snr >= 0.0))
        throw InputError("must be non-negative", "simulation.per_sample_snr");
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const auto &t = scene.targets[i];
        const std::string path = "simulation.targets[" + std::to_string(i) + "]";
        if (!(t.target.range_m > 0.0)) throw InputError("must be positive", path + ".range_m");
        if (!(t.target.rcs_m2 > 0.0)) throw InputError("must be positive", path + ".rcs_m2");
        if (t.per_sample_snr && !(*t.per_sample_snr >= 0.0)) throw InputError("must be non-negative", path + ".snr");
    }
}

/// Per-sample SNR |b_t|^2 of one target: its override, the scene override, or P_R / P_N.
inline double target_sample_snr(const SimScene &scene, const SimTarget &t) {
    if (t.per_sample_snr) return *t.per_sample_snr;
    if (scene.per_sample_snr) return *scene.per_sample_snr;
    return snr(scene.config, t.target.rcs_m2, t.target.range_m, scene.tx_power).per_symbol_snr;
}

/// Unit-variance complex Gaussian noise plus one complex exponential per target:
/// b_t exp(j 2 pi (-n df 2r/c0 + m T_D 2 v f_c / c0 + c ell + r eta) + j chi_t).
inline SymbolGrid synthesize_grid(const SimScene &scene) {
    validate(scene);
    const SystemConfig &cfg = scene.config;
    const double c0 = constants::speed_of_light;
    const double td = doppler_sampling_period(cfg);
    const UnambiguousLimits amb = unambiguous_limits(cfg);

    SymbolGrid grid;
    grid.subcarriers = scene.subcarriers;
    grid.symbols = scene.symbols;
    grid.cols = scene.cols;
    grid.rows = scene.rows;
    grid.data.assign(static_cast<std::size_t>(scene.subcarriers) * scene.symbols * scene.cols * scene.rows, {});

    auto rng = detail::make_rng(scene.seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    struct Component {
        double amplitude, range_cycles, doppler_cycles, col_cycles, row_cycles, phase;
    };
    std::vector<Component> comps;
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
        const auto &st = scene.targets[i];
        const Target &t = st.target;
        if (t.range_m >= amb.range_m || std::abs(t.speed_mps) >= amb.speed_mps) {
            grid.warnings.push_back("target " + std::to_string(i) + " lies beyond the unambiguous range/speed and aliases");
        }
        const double drawn = 2.0 * constants::pi * unit(rng);
        const NafPair naf = angles_to_naf(cfg, t.azimuth_deg, t.elevation_deg);
        comps.push_back({std::sqrt(target_sample_snr(scene, st)),
                         -cfg.subcarrier_spacing_hz * 2.0 * t.range_m / c0,
                         td * 2.0 * t.speed_mps * cfg.carrier_frequency_hz / c0, naf.horizontal, naf.vertical,
                         st.phase_rad.value_or(drawn)});
    }

    for (int r = 0; r < scene.rows; ++r) {
        for (int c = 0; c < scene.cols; ++c) {
            for (int m = 0; m < scene.symbols; ++m) {
                for (int n = 0; n < scene.subcarriers; ++n) {
                    std::complex<double> v{};
                    for (const auto &k : comps) {
                        double cycles = n * k.range_cycles + m * k.doppler_cycles + c * k.col_cycles + r * k.row_cycles;
                        cycles -= std::floor(cycles);
                        v += std::polar(k.amplitude, 2.0 * constants::pi * cycles + k.phase);
                    }
                    grid.at(n, m, c, r) = v;
                }
            }
        }
    }

    if (scene.thermal_noise) {
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        for (auto &v : grid.data) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += std::complex<double>(re, im);
        }
    }
    return grid;
}

/// Largest absolute real or imaginary component; the quantizer full scale under perfect AGC.
inline double full_scale(std::span<const std::complex<double>> values) {
    double fs = 0.0;
    for (const auto &v : values) fs = std::max({fs, std::abs(v.real()), std::abs(v.imag())});
    return fs;
}

/// Uniform mid-rise quantization of real and imaginary parts to `bits` bits over
/// [-full_scale, full_scale]. Maximum error is full_scale * 2^-bits.
inline void quantize_values(std::span<std::complex<double>> values, int bits, double full_scale_value) {
    if (bits < 1) throw InputError("quantizer needs at least one bit", "bits");
    if (!(full_scale_value > 0.0)) return;
    const double step = 2.0 * full_scale_value / std::ldexp(1.0, bits);
    const double top = full_scale_value - 0.5 * step;
    auto q = [&](double x) { return std::clamp(step * (std::floor(x / step) + 0.5), -top, top); };
    for (auto &v : values) v = {q(v.real()), q(v.imag())};
}

inline SymbolGrid quantize_grid(SymbolGrid grid, int bits) {
    quantize_values(grid.data, bits, full_scale(grid.data));
    return grid;
}

} // namespace isac

#endif // ISAC_SIMULATION_HPP
