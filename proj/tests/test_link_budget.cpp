// SPDX-License-Identifier: Apache-2.0

#include "isac/link_budget.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace isac;

namespace {
const Band kBands[3] = {Band::FR1, Band::FR2, Band::FR3};
}

TEST(LinkBudget, SnrMatchesDecibelOracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lr(0.0, 4.0), lrcs(-3.0, 3.0);
    for (int i = 0; i < 3; ++i) {
        const auto cfg = builtin_config(kBands[i]);
        for (int k = 0; k < 50; ++k) {
            const double r = std::pow(10.0, lr(rng));
            const double rcs = std::pow(10.0, lrcs(rng));
            const double got = linear_to_db(snr(cfg, rcs, r, cfg.outdoor_power).snr);
            const double want = static_cast<double>(oracle::snr_db(oracle::bands[i], oracle::bands[i].pt_out_dbm, rcs, r));
            EXPECT_NEAR(got, want, 1e-9);
        }
    }
}

TEST(LinkBudget, NoisePowerValues) {
    // -174 dBm/Hz + 8 dB + 10log10(N df)
    const auto fr1 = builtin_config(Band::FR1);
    EXPECT_NEAR(noise_power(fr1).value / 4.937e-12, 1.0, 1e-3);
    const auto fr2 = builtin_config(Band::FR2);
    EXPECT_NEAR(noise_power(fr2).value / 3.82e-11, 1.0, 2e-3);
}

TEST(LinkBudget, ReceivedPowerExample) {
    const auto cfg = builtin_config(Band::FR1);
    EXPECT_NEAR(received_power(cfg, 1.0, 100.0, cfg.outdoor_power).value / 4.33e-7, 1.0, 2e-3);
}

TEST(LinkBudget, NoiseRangeHitsThreshold) {
    for (Band b : kBands) {
        const auto cfg = builtin_config(b);
        const double rn = max_range_noise(cfg, 1.0, cfg.outdoor_power, default_min_snr);
        EXPECT_NEAR(snr(cfg, 1.0, rn, cfg.outdoor_power).snr / default_min_snr, 1.0, 1e-12);
    }
}

TEST(LinkBudget, NoiseRangeMatchesOracle) {
    for (int i = 0; i < 3; ++i) {
        const auto cfg = builtin_config(kBands[i]);
        for (double rcs : {0.1, 1.0, 2.0, 100.0}) {
            const double got = max_range_noise(cfg, rcs, cfg.outdoor_power, default_min_snr);
            const double want = static_cast<double>(oracle::noise_range(oracle::bands[i], oracle::bands[i].pt_out_dbm, rcs, 17.0L));
            EXPECT_NEAR(got / want, 1.0, 1e-10);
        }
    }
}

TEST(LinkBudget, NoiseRangeScalesWithFourthRootOfRcs) {
    const auto cfg = builtin_config(Band::FR3);
    const double r1 = max_range_noise(cfg, 1.0, cfg.outdoor_power, default_min_snr);
    const double r16 = max_range_noise(cfg, 16.0, cfg.outdoor_power, default_min_snr);
    EXPECT_NEAR(r16 / r1, 2.0, 1e-12);
}

TEST(LinkBudget, SnrFallsFortyDbPerDecade) {
    const auto cfg = builtin_config(Band::FR2);
    const double a = linear_to_db(snr(cfg, 1.0, 10.0, cfg.outdoor_power).snr);
    const double b = linear_to_db(snr(cfg, 1.0, 100.0, cfg.outdoor_power).snr);
    EXPECT_NEAR(a - b, 40.0, 1e-9);
}

TEST(LinkBudget, RcsEstimateInvertsRadarEquation) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lr(0.5, 3.5), lrcs(-2.0, 2.0);
    for (Band b : kBands) {
        const auto cfg = builtin_config(b);
        for (int k = 0; k < 100; ++k) {
            const double r = std::pow(10.0, lr(rng));
            const double rcs = std::pow(10.0, lrcs(rng));
            const auto s = snr(cfg, rcs, r, cfg.outdoor_power);
            const double peak = s.received_power.value * s.processing_gain;
            EXPECT_NEAR(estimate_rcs(cfg, peak, r, cfg.outdoor_power) / rcs, 1.0, 1e-12);
        }
    }
}

TEST(LinkBudget, RejectsNonPositiveInputs) {
    const auto cfg = builtin_config(Band::FR1);
    EXPECT_THROW(received_power(cfg, 1.0, 0.0, cfg.outdoor_power), InputError);
    EXPECT_THROW(received_power(cfg, -1.0, 10.0, cfg.outdoor_power), InputError);
    EXPECT_THROW(max_range_noise(cfg, 1.0, cfg.outdoor_power, 0.0), InputError);
    EXPECT_THROW(estimate_rcs(cfg, 0.0, 10.0, cfg.outdoor_power), InputError);
}
