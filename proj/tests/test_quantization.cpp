// SPDX-License-Identifier: Apache-2.0

#include "isac/quantization.hpp"
#include "isac/link_budget.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace isac;

TEST(Quantization, SqnrPerBit) {
    EXPECT_NEAR(linear_to_db(sqnr(12)), 72.2472, 1e-4);
    EXPECT_NEAR(linear_to_db(sqnr(13)) - linear_to_db(sqnr(12)), 20.0 * std::log10(2.0), 1e-12);
    EXPECT_THROW(sqnr(0), InputError);
}

TEST(Quantization, ReceiverSqnrIncludesGainAndPapr) {
    auto cfg = builtin_config(Band::FR1);
    const double nm = 6552.0 * 96.0;
    EXPECT_NEAR(receiver_sqnr(cfg).adc / (std::pow(4.0, 12) * nm / db_to_linear(8.0)), 1.0, 1e-12);
    EXPECT_NEAR(receiver_sqnr(cfg).effective / 1.6725e12, 1.0, 1e-4);
    cfg.fft_bits = 8;
    EXPECT_DOUBLE_EQ(receiver_sqnr(cfg).effective, std::pow(4.0, 8));
    cfg.fft_bits = 30;
    EXPECT_DOUBLE_EQ(receiver_sqnr(cfg).effective, receiver_sqnr(cfg).adc);
    cfg.fft_bits.reset();
    cfg.agc_loss = Gain::from_db(-3.0);
    EXPECT_NEAR(linear_to_db(receiver_sqnr(builtin_config(Band::FR1)).adc) - linear_to_db(receiver_sqnr(cfg).adc), 3.0,
                1e-9);
}

TEST(Quantization, StrongestReturnPicksLargestLevel) {
    Environment env;
    env.clutter = {{10.0, 5.0}, {1000.0, 30.0}, {1.0, 2.0}};
    const auto s = strongest_return(env);
    EXPECT_EQ(s.source, StrongestReturn::Source::Clutter);
    EXPECT_EQ(s.clutter_index, 2u);
    EXPECT_DOUBLE_EQ(s.level, 1.0 / 16.0);
    env.self_interference = SelfInterference{1e-2, 0.1};
    const auto t = strongest_return(env);
    EXPECT_EQ(t.source, StrongestReturn::Source::SelfInterference);
    EXPECT_NEAR(t.level, 1e-2 * 4.0 * M_PI / 0.01, 1e-12);
}

TEST(Quantization, EmptyEnvironmentRejected) {
    EXPECT_THROW(strongest_return(Environment{}), InputError);
}

TEST(Quantization, NegativeClutterRejectedWithPath) {
    Environment env;
    env.clutter = {{1.0, 5.0}, {1.0, -3.0}};
    try {
        validate(env);
        FAIL();
    } catch (const InputError &e) {
        EXPECT_EQ(e.field(), "clutter[1].range_m");
    }
}

TEST(Quantization, DefaultSelfInterferenceUsesApertureDiagonal) {
    const auto cfg = builtin_config(Band::FR2);
    const auto si = SelfInterference::default_for(cfg);
    const double lambda = 299792458.0 / 28e9;
    EXPECT_NEAR(si.separation_m, std::hypot(16.0 * lambda, 16.0 * lambda), 1e-12);
    EXPECT_NEAR(linear_to_db(si.isolation), -80.0, 1e-9);
}

TEST(Quantization, RangeExampleFr2) {
    // 1 m^2 target behind a 100 m^2 reflector at 20 m, 8-bit FFT words.
    auto cfg = builtin_config(Band::FR2);
    cfg.fft_bits = 8;
    Environment env;
    env.clutter = {{100.0, 20.0}};
    const auto q = max_range_quant(cfg, 1.0, env, default_min_snr);
    EXPECT_NEAR(q.range_m, 20.0 * std::pow(65536.0 / (100.0 * std::pow(10.0, 1.7)), 0.25), 1e-9);
    EXPECT_NEAR(q.range_m, 38.0, 0.05);
}

TEST(Quantization, UnitRatioReturnsClutterRange) {
    auto cfg = builtin_config(Band::FR1);
    cfg.fft_bits = 6;
    Environment env;
    env.clutter = {{3.0, 17.0}};
    const auto q = max_range_quant(cfg, 3.0, env, sqnr(6));
    EXPECT_NEAR(q.range_m, 17.0, 1e-12);
}

TEST(Quantization, FourthRootAndScaleInvariance) {
    auto cfg = builtin_config(Band::FR3);
    Environment env;
    env.clutter = {{10.0, 8.0}};
    const double base = max_range_quant(cfg, 1.0, env, default_min_snr).range_m;
    EXPECT_NEAR(max_range_quant(cfg, 1.0, env, default_min_snr / 16.0).range_m / base, 2.0, 1e-12);
    Environment scaled;
    scaled.clutter = {{70.0, 8.0}};
    EXPECT_NEAR(max_range_quant(cfg, 7.0, scaled, default_min_snr).range_m / base, 1.0, 1e-12);
}

TEST(Quantization, RangeHitsMinimumSnrAgainstQuantizationNoise) {
    // Oracle: target-to-strongest power ratio at r_q times gamma_q equals gamma*.
    const auto cfg = builtin_config(Band::FR3);
    Environment env;
    env.clutter = {{50.0, 12.0}};
    const auto q = max_range_quant(cfg, 2.0, env, default_min_snr);
    const double ratio = (2.0 / std::pow(q.range_m, 4)) / (50.0 / std::pow(12.0, 4));
    EXPECT_NEAR(ratio * receiver_sqnr(cfg).effective / default_min_snr, 1.0, 1e-12);
}

TEST(Quantization, AbsoluteAndRelativeFormsAgreeProperty) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> lrcs(-2.0, 3.0), lr(-0.5, 2.5), lsnr(0.5, 3.0);
    std::uniform_int_distribution<int> count(1, 6), bits(4, 16), band(0, 2);
    const Band bands[3] = {Band::FR1, Band::FR2, Band::FR3};
    for (int i = 0; i < 1000; ++i) {
        auto cfg = builtin_config(bands[band(rng)]);
        cfg.adc_bits = bits(rng);
        Environment env;
        for (int k = count(rng); k > 0; --k) env.clutter.push_back({std::pow(10.0, lrcs(rng)), std::pow(10.0, lr(rng))});
        const auto q = max_range_quant(cfg, std::pow(10.0, lrcs(rng)), env, std::pow(10.0, lsnr(rng)));
        ASSERT_TRUE(q.relative_form_m);
        EXPECT_NEAR(*q.relative_form_m / q.range_m, 1.0, 1e-12) << "case " << i;
    }
}
