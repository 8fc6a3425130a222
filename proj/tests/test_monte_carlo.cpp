// SPDX-License-Identifier: Apache-2.0

#include "isac/monte_carlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isac;

namespace {
SimScene scene() {
    SimScene s;
    s.config = builtin_config(Band::FR2);
    s.seed = 1234;
    s.subcarriers = 256;
    s.symbols = 64;
    SimTarget t;
    t.target.range_m = 10.0;
    t.target.speed_mps = 5.0;
    s.targets = {t};
    return s;
}
} // namespace

TEST(RunTrials, ResultsIndependentOfThreadCount) {
    auto job = [](int i) { return trial_seed(7, static_cast<std::uint64_t>(i)) % 1000; };
    const auto a = run_trials<std::uint64_t>(200, job, 1);
    const auto b = run_trials<std::uint64_t>(200, job, 4);
    EXPECT_EQ(a, b);
    EXPECT_NE(trial_seed(7, 0), trial_seed(7, 1));
}

TEST(RunTrials, PropagatesErrors) {
    auto job = [](int i) -> int {
        if (i == 17) throw std::runtime_error("boom");
        return i;
    };
    EXPECT_THROW(run_trials<int>(50, job, 2), std::runtime_error);
}

TEST(MonteCarlo, RequiresEnoughTrials) {
    MonteCarloOptions opts;
    opts.trials = 50;
    EXPECT_THROW(monte_carlo_accuracy(scene(), opts), InputError);
}

TEST(MonteCarlo, BitExactForFixedSeed) {
    MonteCarloOptions opts;
    opts.trials = 100;
    const auto a = monte_carlo_accuracy(scene(), opts);
    const auto b = monte_carlo_accuracy(scene(), opts);
    EXPECT_EQ(a.range.std_dev, b.range.std_dev);
    EXPECT_EQ(a.speed.std_dev, b.speed.std_dev);
    EXPECT_EQ(a.detected, b.detected);
}

TEST(MonteCarlo, RangeStdNearBound) {
    MonteCarloOptions opts;
    opts.trials = 200;
    const auto r = monte_carlo_accuracy(scene(), opts);
    EXPECT_EQ(r.miss_rate, 0.0);
    EXPECT_GT(r.range.ratio, 0.8);
    EXPECT_LT(r.range.ratio, 2.0);
    EXPECT_LT(r.range.ci_low, r.range.std_dev);
    EXPECT_GT(r.range.ci_high, r.range.std_dev);
    EXPECT_NEAR(r.range.crlb, *crlb_range(120e3, 256, 1000.0), 0.0);
}

TEST(MonteCarlo, ThreeDbHalvesVariance) {
    MonteCarloOptions opts;
    opts.trials = 300;
    const auto a = monte_carlo_accuracy(scene(), opts);
    opts.snr *= 2.0;
    const auto b = monte_carlo_accuracy(scene(), opts);
    const double ratio = a.range.std_dev / b.range.std_dev;
    // Combine the two 95% intervals into a bound on the ratio.
    EXPECT_GT(std::sqrt(2.0), a.range.ci_low / b.range.ci_high);
    EXPECT_LT(std::sqrt(2.0), a.range.ci_high / b.range.ci_low);
    EXPECT_NEAR(ratio, std::sqrt(2.0), 0.3);
}

TEST(MonteCarlo, ReportsMissRate) {
    MonteCarloOptions opts;
    opts.trials = 100;
    opts.snr = 10.0; // 10 dB total: far below the 17 dB threshold
    try {
        monte_carlo_accuracy(scene(), opts);
        FAIL();
    } catch (const MonteCarloError &e) {
        EXPECT_GT(e.miss_rate(), 0.1);
    }
}

TEST(MonteCarlo, ChiSquareQuantile) {
    // chi2(0.975; 99) = 128.42, chi2(0.025; 99) = 73.36
    EXPECT_NEAR(detail::chi_square_quantile(99, 1.959963984540054), 128.42, 0.1);
    EXPECT_NEAR(detail::chi_square_quantile(99, -1.959963984540054), 73.36, 0.1);
}
