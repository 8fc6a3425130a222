// SPDX-License-Identifier: Apache-2.0
//
// Zero-padded OFDM radar periodograms and peak detection on them.

#ifndef ISAC_PERIODOGRAM_HPP
#define ISAC_PERIODOGRAM_HPP

#include "isac/detail/fft.hpp"
#include "isac/link_budget.hpp"
#include "isac/simulation.hpp"
#include "isac/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace isac {

enum class Axes { RangeDoppler, RangeAzimuth };
enum class Window { Rectangular, Hann };

inline std::string_view to_string(Axes axes) {
    return axes == Axes::RangeDoppler ? "range-doppler" : "range-azimuth";
}
inline std::string_view to_string(Window w) { return w == Window::Hann ? "hann" : "rectangular"; }

struct PeriodogramOptions {
    Axes axes = Axes::RangeDoppler;
    int range_pad = 1; // zero-pad factor along subcarriers
    int cross_pad = 1; // zero-pad factor along symbols or columns
    Window window = Window::Rectangular;
    std::optional<int> fft_bits; // word length of FFT inputs and outputs
};

/// Power over (range bin, cross bin), row-major with range as the slow index.
/// Noise-normalized: unit noise floor, a target of per-sample SNR g peaks near g * N * K
/// where K is the number of samples along the cross axis.
struct PeriodogramGrid {
    Axes axes = Axes::RangeDoppler;
    Window window = Window::Rectangular;
    int range_bins = 0;
    int cross_bins = 0;
    int range_pad = 1;
    int cross_pad = 1;
    int averaged_slices = 1; // incoherently summed slices over the unselected axes
    double range_per_bin = 0.0; // m
    double cross_per_bin = 0.0; // m/s for Doppler, NAF for azimuth
    double col_spacing = 0.5;   // wavelengths, for NAF -> azimuth
    std::vector<double> power;

    double at(int range_bin, int cross_bin) const {
        return power[static_cast<std::size_t>(range_bin) * cross_bins + cross_bin];
    }
    double range_at(double bin) const { return bin * range_per_bin; }
    /// Cross-axis bins are signed: the upper half maps to negative speed/NAF.
    double cross_at(double bin) const {
        const double signed_bin = bin >= 0.5 * cross_bins ? bin - cross_bins : bin;
        return signed_bin * cross_per_bin;
    }
};

namespace detail {
inline std::vector<double> window_weights(Window w, int length) {
    std::vector<double> out(static_cast<std::size_t>(length), 1.0);
    if (w == Window::Hann && length > 1) {
        for (int i = 0; i < length; ++i) out[i] = 0.5 - 0.5 * std::cos(2.0 * constants::pi * (i + 0.5) / length);
    }
    return out;
}
} // namespace detail

/// Squared magnitude of the 2-D DFT over the selected axes, averaged over the others.
/// The range axis uses the inverse orientation so positive range lands on positive bins.
inline PeriodogramGrid compute_periodogram(const SymbolGrid &grid, const SystemConfig &cfg,
                                           const PeriodogramOptions &opts = {}) {
    if (opts.range_pad < 1) throw InputError("zero-pad factor must be >= 1", "range_pad");
    if (opts.cross_pad < 1) throw InputError("zero-pad factor must be >= 1", "cross_pad");
    if (opts.fft_bits && *opts.fft_bits < 1) throw InputError("must be >= 1", "fft_bits");
    if (grid.data.empty()) throw InputError("empty grid", "grid");

    const bool doppler = opts.axes == Axes::RangeDoppler;
    const int n_len = grid.subcarriers;
    const int k_len = doppler ? grid.symbols : grid.cols;
    const int other_a = doppler ? grid.cols : grid.symbols; // unselected axes
    const int other_b = grid.rows;
    if (!doppler && grid.cols < 2) throw InputError("range-azimuth needs at least two array columns", "axes");

    PeriodogramGrid out;
    out.axes = opts.axes;
    out.window = opts.window;
    out.range_pad = opts.range_pad;
    out.cross_pad = opts.cross_pad;
    out.range_bins = n_len * opts.range_pad;
    out.cross_bins = k_len * opts.cross_pad;
    out.averaged_slices = other_a * other_b;
    out.col_spacing = cfg.array.col_spacing;
    const double c0 = constants::speed_of_light;
    out.range_per_bin = c0 / (2.0 * out.range_bins * cfg.subcarrier_spacing_hz);
    out.cross_per_bin = doppler ? c0 / (2.0 * cfg.carrier_frequency_hz * out.cross_bins * doppler_sampling_period(cfg))
                                : 1.0 / out.cross_bins;
    out.power.assign(static_cast<std::size_t>(out.range_bins) * out.cross_bins, 0.0);

    const auto wn = detail::window_weights(opts.window, n_len);
    const auto wk = detail::window_weights(opts.window, k_len);
    double energy_n = 0.0, energy_k = 0.0;
    for (double w : wn) energy_n += w * w;
    for (double w : wk) energy_k += w * w;
    const double norm = 1.0 / (energy_n * energy_k * out.averaged_slices);

    std::vector<std::complex<double>> slice(static_cast<std::size_t>(n_len) * k_len);
    std::vector<std::complex<double>> buf(out.power.size());
    for (int b = 0; b < other_b; ++b) {
        for (int a = 0; a < other_a; ++a) {
            for (int n = 0; n < n_len; ++n) {
                for (int k = 0; k < k_len; ++k) {
                    slice[static_cast<std::size_t>(n) * k_len + k] = doppler ? grid.at(n, k, a, b) : grid.at(n, a, k, b);
                }
            }
            if (opts.fft_bits) quantize_values(slice, *opts.fft_bits, full_scale(slice));

            std::fill(buf.begin(), buf.end(), std::complex<double>{});
            for (int n = 0; n < n_len; ++n) {
                for (int k = 0; k < k_len; ++k) {
                    buf[static_cast<std::size_t>(n) * out.cross_bins + k] =
                        slice[static_cast<std::size_t>(n) * k_len + k] * (wn[n] * wk[k]);
                }
            }
            detail::fft_forward_2d(buf, out.range_bins, out.cross_bins);
            if (opts.fft_bits) quantize_values(buf, *opts.fft_bits, full_scale(buf));

            for (int i = 0; i < out.range_bins; ++i) {
                const int src = (out.range_bins - i) % out.range_bins;
                for (int k = 0; k < out.cross_bins; ++k) {
                    out.power[static_cast<std::size_t>(i) * out.cross_bins + k] +=
                        std::norm(buf[static_cast<std::size_t>(src) * out.cross_bins + k]) * norm;
                }
            }
        }
    }
    return out;
}

/// Mean noise power estimated from the median bin. Periodogram noise bins are
/// exponential (median = mean ln 2); averaging K slices makes them Gamma(K) distributed,
/// whose median is approximated by Wilson-Hilferty.
inline double noise_floor(const PeriodogramGrid &pgm) {
    std::vector<double> copy = pgm.power;
    const auto mid = copy.begin() + static_cast<std::ptrdiff_t>(copy.size() / 2);
    std::nth_element(copy.begin(), mid, copy.end());
    const double median = *mid;
    const double k = pgm.averaged_slices;
    const double ratio = k <= 1 ? std::log(2.0) : std::pow(1.0 - 1.0 / (9.0 * k), 3.0);
    return median / ratio;
}

struct Detection {
    double range_m = 0.0;
    std::optional<double> speed_mps;
    std::optional<double> azimuth_deg;
    std::optional<double> elevation_deg;
    double range_bin = 0.0; // interpolated
    double cross_bin = 0.0; // interpolated, in [0, cross_bins)
    double peak_power = 0.0;
    double peak_to_floor = 0.0;
};

namespace detail {
// Vertex of the parabola through log-power samples; zero when the samples are not concave.
inline double log_parabola_offset(double left, double centre, double right) {
    constexpr double tiny = 1e-300;
    const double a = std::log(std::max(left, tiny));
    const double b = std::log(std::max(centre, tiny));
    const double c = std::log(std::max(right, tiny));
    const double den = a - 2.0 * b + c;
    if (!(den < 0.0)) return 0.0;
    return std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
}
} // namespace detail

/// Local maxima (circular 8-neighbourhood, one per plateau) whose power exceeds
/// `threshold` times the estimated noise floor, refined by 3-point log-domain parabolic
/// interpolation on each axis. Sorted by decreasing peak power.
inline std::vector<Detection> detect_targets(const PeriodogramGrid &pgm, double threshold) {
    std::vector<Detection> out;
    if (pgm.power.empty()) return out;
    const double floor_power = noise_floor(pgm);
    const int nr = pgm.range_bins;
    const int nc = pgm.cross_bins;
    auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
    auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * nc + c; };

    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
            const double p = pgm.power[idx(r, c)];
            if (!(p > threshold * floor_power)) continue;
            bool is_max = true;
            for (int dr = -1; dr <= 1 && is_max; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int rr = wrap(r + dr, nr);
                    const int cc = wrap(c + dc, nc);
                    if (rr == r && cc == c) continue;
                    const double q = pgm.power[idx(rr, cc)];
                    if (q > p || (q == p && idx(rr, cc) < idx(r, c))) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) continue;

            Detection d;
            d.peak_power = p;
            d.peak_to_floor = floor_power > 0.0 ? p / floor_power : std::numeric_limits<double>::infinity();
            d.range_bin = r;
            if (nr >= 3) d.range_bin += detail::log_parabola_offset(pgm.at(wrap(r - 1, nr), c), p, pgm.at(wrap(r + 1, nr), c));
            d.cross_bin = c;
            if (nc >= 3) d.cross_bin += detail::log_parabola_offset(pgm.at(r, wrap(c - 1, nc)), p, pgm.at(r, wrap(c + 1, nc)));
            if (d.range_bin < 0.0) d.range_bin += nr;
            if (d.cross_bin < 0.0) d.cross_bin += nc;
            d.range_m = pgm.range_at(d.range_bin);
            const double cross = pgm.cross_at(d.cross_bin);
            if (pgm.axes == Axes::RangeDoppler) {
                d.speed_mps = cross;
            } else {
                const double s = std::clamp(cross / pgm.col_spacing, -1.0, 1.0);
                d.azimuth_deg = rad_to_deg(std::asin(s));
            }
            out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end(), [](const Detection &a, const Detection &b) { return a.peak_power > b.peak_power; });
    return out;
}

} // namespace isac

#endif // ISAC_PERIODOGRAM_HPP
