// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo estimation accuracy of the periodogram pipeline against the CRLB.

#ifndef ISAC_MONTE_CARLO_HPP
#define ISAC_MONTE_CARLO_HPP

#include "isac/accuracy.hpp"
#include "isac/periodogram.hpp"
#include "isac/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace isac {

class MonteCarloError : public std::runtime_error {
public:
    MonteCarloError(const std::string &what, double miss_rate) : std::runtime_error(what), miss_rate_(miss_rate) {}
    double miss_rate() const noexcept { return miss_rate_; }

private:
    double miss_rate_;
};

/// Runs `trials` independent jobs, each a pure function of its index. Results land in
/// index order, so the outcome does not depend on scheduling.
template <typename Result>
std::vector<Result> run_trials(int trials, const std::function<Result(int)> &job, unsigned threads = 0) {
    std::vector<Result> results(static_cast<std::size_t>(std::max(trials, 0)));
    if (trials <= 0) return results;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned id) {
        try {
            for (int i = next++; i < trials; i = next++) results[static_cast<std::size_t>(i)] = job(i);
        } catch (...) {
            errors[id] = std::current_exception();
            next = trials;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto &th : pool) th.join();
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

/// Seed of trial `index` derived from a base seed (splitmix64 finalizer).
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct AxisStatistics {
    double std_dev = 0.0;
    double ci_low = 0.0;  // 95% confidence interval of std_dev
    double ci_high = 0.0;
    double bias = 0.0;
    double crlb = 0.0;
    double ratio = 0.0; // std_dev / crlb
};

struct MonteCarloOptions {
    int trials = 500;
    double snr = 1000.0; // post-processing SNR gamma = per-sample SNR * N_sim * M_sim
    PeriodogramOptions periodogram{Axes::RangeDoppler, 2, 2, Window::Rectangular, std::nullopt};
    double detection_threshold = default_min_snr;
    unsigned threads = 0;
};

struct MonteCarloResult {
    int trials = 0;
    int detected = 0;
    double miss_rate = 0.0;
    AxisStatistics range;
    AxisStatistics speed;
};

namespace detail {
// Wilson-Hilferty chi-square quantile for `dof` degrees of freedom at standard normal score z.
inline double chi_square_quantile(double dof, double z) {
    const double a = 2.0 / (9.0 * dof);
    const double t = 1.0 - a + z * std::sqrt(a);
    return dof * t * t * t;
}

inline AxisStatistics summarize(const std::vector<double> &errors, double crlb) {
    AxisStatistics s;
    const double n = static_cast<double>(errors.size());
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= n;
    double ss = 0.0;
    for (double e : errors) ss += (e - mean) * (e - mean);
    s.std_dev = std::sqrt(ss / (n - 1.0));
    s.bias = mean;
    constexpr double z975 = 1.959963984540054;
    s.ci_low = s.std_dev * std::sqrt((n - 1.0) / chi_square_quantile(n - 1.0, z975));
    s.ci_high = s.std_dev * std::sqrt((n - 1.0) / chi_square_quantile(n - 1.0, -z975));
    s.crlb = crlb;
    s.ratio = s.std_dev / crlb;
    return s;
}
} // namespace detail

/// Empirical range/speed standard deviation of the strongest target of `scene` at
/// post-processing SNR `opts.snr`. Each trial redraws noise and echo phase and jitters
/// the target uniformly within one range and one Doppler bin. The array is collapsed
/// to one element so the processing gain is exactly N_sim * M_sim; the speed bound uses
/// the simulated slow-time period T_D.
inline MonteCarloResult monte_carlo_accuracy(const SimScene &scene, const MonteCarloOptions &opts) {
    if (opts.trials < 100) throw InputError("at least 100 trials are required", "trials");
    if (scene.targets.empty()) throw InputError("scene has no target", "simulation.targets");
    if (!(opts.snr > 0.0)) throw InputError("SNR must be positive", "snr");
    if (scene.subcarriers < 2 || scene.symbols < 2) throw InputError("needs at least 2x2 samples", "simulation");
    if (opts.periodogram.axes != Axes::RangeDoppler) throw InputError("accuracy runs use range-doppler", "axes");
    validate(scene);

    const SystemConfig &cfg = scene.config;
    const double c0 = constants::speed_of_light;
    const double td = doppler_sampling_period(cfg);
    const double range_bin = c0 / (2.0 * scene.subcarriers * cfg.subcarrier_spacing_hz);
    const double speed_bin = c0 / (2.0 * cfg.carrier_frequency_hz * scene.symbols * td);
    const double per_sample = opts.snr / (static_cast<double>(scene.subcarriers) * scene.symbols);

    struct Outcome {
        bool found = false;
        double range_error = 0.0;
        double speed_error = 0.0;
    };

    auto job = [&](int trial) -> Outcome {
        SimScene s = scene;
        s.cols = 1;
        s.rows = 1;
        s.seed = trial_seed(scene.seed, static_cast<std::uint64_t>(trial));
        auto jitter_rng = detail::make_rng(s.seed, 1);
        std::uniform_real_distribution<double> half(-0.5, 0.5);
        SimTarget &t = s.targets.front();
        t.target.range_m += half(jitter_rng) * range_bin;
        t.target.speed_mps += half(jitter_rng) * speed_bin;
        t.target.azimuth_deg = 0.0;
        t.target.elevation_deg = 0.0;
        t.per_sample_snr = per_sample;
        t.phase_rad.reset();

        const SymbolGrid grid = synthesize_grid(s);
        const PeriodogramGrid pgm = compute_periodogram(grid, cfg, opts.periodogram);
        const auto dets = detect_targets(pgm, opts.detection_threshold);
        Outcome o;
        for (const auto &d : dets) {
            const double dr = d.range_m - t.target.range_m;
            const double dv = d.speed_mps.value_or(0.0) - t.target.speed_mps;
            if (std::abs(dr) <= 1.5 * range_bin && std::abs(dv) <= 1.5 * speed_bin) {
                o = {true, dr, dv};
                break; // strongest match
            }
        }
        return o;
    };

    const auto outcomes = run_trials<Outcome>(opts.trials, job, opts.threads);
    std::vector<double> range_err, speed_err;
    for (const auto &o : outcomes) {
        if (!o.found) continue;
        range_err.push_back(o.range_error);
        speed_err.push_back(o.speed_error);
    }

    MonteCarloResult res;
    res.trials = opts.trials;
    res.detected = static_cast<int>(range_err.size());
    res.miss_rate = 1.0 - static_cast<double>(res.detected) / opts.trials;
    if (res.miss_rate > 0.1) {
        throw MonteCarloError("insufficient detections: miss rate " + std::to_string(res.miss_rate), res.miss_rate);
    }
    res.range = detail::summarize(range_err, *crlb_range(cfg.subcarrier_spacing_hz, scene.subcarriers, opts.snr));
    res.speed = detail::summarize(speed_err, *crlb_speed(cfg.carrier_frequency_hz, td, scene.symbols, opts.snr));
    return res;
}

} // namespace isac

#endif // ISAC_MONTE_CARLO_HPP
