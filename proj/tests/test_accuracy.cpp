// SPDX-License-Identifier: Apache-2.0

#include "isac/accuracy.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isac;

namespace {
const Band kBands[3] = {Band::FR1, Band::FR2, Band::FR3};
const double kGamma = std::pow(10.0, 1.7);
} // namespace

TEST(Accuracy, RangeAndSpeedBoundsMatchOracle) {
    for (int i = 0; i < 3; ++i) {
        const auto &b = oracle::bands[i];
        const auto acc = crlb_accuracy(builtin_config(kBands[i]), kGamma);
        const auto want_r = oracle::crlb(oracle::c0 / (4 * oracle::pi * b.df), b.n, kGamma);
        const auto want_s = oracle::crlb(oracle::c0 / (4 * oracle::pi * b.fc * b.t0), oracle::symbols_per_frame(b), kGamma);
        EXPECT_NEAR(*acc.range_m / static_cast<double>(want_r), 1.0, 1e-12);
        EXPECT_NEAR(*acc.speed_mps / static_cast<double>(want_s), 1.0, 1e-12);
    }
}

TEST(Accuracy, TabulatedValues) {
    const auto fr1 = crlb_accuracy(builtin_config(Band::FR1), kGamma);
    const auto fr2 = crlb_accuracy(builtin_config(Band::FR2), kGamma);
    EXPECT_NEAR(*fr1.range_m, 0.0420, 5e-4);
    EXPECT_NEAR(*fr2.range_m, 0.00543, 5e-5);
    EXPECT_NEAR(*fr1.speed_mps, 0.689, 1e-3);
    EXPECT_NEAR(*fr2.speed_mps, 0.0861, 1e-4);
}

TEST(Accuracy, InverseSquareRootSnrScaling) {
    const auto cfg = builtin_config(Band::FR3);
    const auto a = crlb_accuracy(cfg, 100.0);
    const auto b = crlb_accuracy(cfg, 400.0);
    EXPECT_NEAR(*a.range_m / *b.range_m, 2.0, 1e-12);
    EXPECT_NEAR(*a.speed_mps / *b.speed_mps, 2.0, 1e-12);
    EXPECT_NEAR(*a.vertical_naf / *b.vertical_naf, 2.0, 1e-12);
    EXPECT_NEAR(*a.horizontal_naf / *b.horizontal_naf, 2.0, 1e-12);
}

TEST(Accuracy, SingleElementHasNoBound) {
    EXPECT_FALSE(crlb_naf(1, 10.0));
    EXPECT_TRUE(crlb_naf(2, 10.0));
    EXPECT_THROW(crlb_naf(4, 0.0), InputError);
    EXPECT_THROW(crlb_range(30e3, 100, -1.0), InputError);
}

TEST(Accuracy, NafBoundOracle) {
    // 1/(2 pi) sqrt(6 / ((K^2-1) gamma)) for K = 8 at 17 dB
    const double want = 1.0 / (2.0 * M_PI) * std::sqrt(6.0 / (63.0 * kGamma));
    EXPECT_NEAR(*crlb_naf(8, kGamma), want, 1e-15);
}

TEST(Accuracy, BoresightAngles) {
    const auto r1 = accuracy_report(builtin_config(Band::FR1), kGamma, 0, 0, std::nullopt, kGamma);
    const auto r2 = accuracy_report(builtin_config(Band::FR2), kGamma, 0, 0, std::nullopt, kGamma);
    EXPECT_NEAR(*r1.azimuth_deg, 0.7951, 1e-3);
    EXPECT_NEAR(*r2.azimuth_deg, 0.19728, 1e-4);
    EXPECT_NEAR(*r1.elevation_deg, 0.18797, 1e-4);
    // Boresight, small angles: sigma_angle ~ sigma_naf / spacing in radians.
    const double oracle_az = std::asin(*crlb_naf(8, kGamma) / 0.5) * 180.0 / M_PI;
    EXPECT_NEAR(*r1.azimuth_deg, oracle_az, 1e-12);
}

TEST(Accuracy, AngleMappingOffBoresightIsWorstBranch) {
    const auto cfg = builtin_config(Band::FR2);
    const double sx = 0.01;
    const auto ang = naf_offsets_to_angles(cfg, 30.0, 0.0, 0.01, sx, "test");
    const double l = 0.5 * std::sin(30.0 * M_PI / 180.0);
    const double up = std::asin((l + sx) / 0.5) * 180.0 / M_PI - 30.0;
    const double dn = 30.0 - std::asin((l - sx) / 0.5) * 180.0 / M_PI;
    EXPECT_NEAR(ang.azimuth_deg, std::max(up, dn), 1e-10);
    EXPECT_GT(up, dn);
}

TEST(Accuracy, EndFireSteeringRejected) {
    const auto cfg = builtin_config(Band::FR2);
    EXPECT_THROW(angles_to_naf(cfg, 0.0, 90.0), InputError);
    EXPECT_THROW(naf_offsets_to_angles(cfg, 0.0, 0.0, 3.0, 3.0, "x"), SteeringError);
}

TEST(Accuracy, ClockInflationIsRootSumSquare) {
    const auto cfg = builtin_config(Band::FR1);
    const auto c = clock_inflate(0.03, 0.4, 1e-10, 10.0, cfg);
    EXPECT_NEAR(c.range_m, std::sqrt(0.03 * 0.03 + std::pow(299792458.0 * 1e-10, 2)), 1e-15);
    EXPECT_NEAR(c.speed_mps, std::sqrt(0.16 + std::pow(299792458.0 / 3.5e9 * 10.0, 2)), 1e-12);
    const auto z = clock_inflate(0.03, 0.4, 0.0, 0.0, cfg);
    EXPECT_DOUBLE_EQ(z.range_m, 0.03);
    EXPECT_THROW(clock_inflate(0.03, 0.4, -1.0, 0.0, cfg), InputError);
}

TEST(Accuracy, ReportFlagsLowSnr) {
    const auto cfg = builtin_config(Band::FR1);
    const auto rep = accuracy_report(cfg, 10.0, 0, 0, ClockStats{1e-9, 0.0}, kGamma);
    EXPECT_TRUE(rep.below_detection_snr);
    EXPECT_FALSE(rep.warnings.empty());
    ASSERT_TRUE(rep.clock_inflated);
    EXPECT_GT(rep.clock_inflated->range_m, *rep.range_m);
}
