// SPDX-License-Identifier: Apache-2.0

#include "isac/system_model.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isac;

namespace {
const Band kBands[3] = {Band::FR1, Band::FR2, Band::FR3};

std::string field_of(const SystemConfig &cfg) {
    try {
        validate(cfg);
    } catch (const InputError &e) {
        return e.field();
    }
    return {};
}
} // namespace

TEST(SystemModel, BuiltinConfigsValidate) {
    for (Band b : kBands) EXPECT_NO_THROW(validate(builtin_config(b)));
    EXPECT_THROW(builtin_config(Band::Custom), InputError);
}

TEST(SystemModel, SymbolsPerFrameMatchesOracle) {
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(symbols_per_frame(builtin_config(kBands[i])), static_cast<int>(oracle::symbols_per_frame(oracle::bands[i])));
    }
    EXPECT_EQ(symbols_per_frame(builtin_config(Band::FR1)), 96);
    EXPECT_EQ(symbols_per_frame(builtin_config(Band::FR2)), 384);
    EXPECT_EQ(symbols_per_frame(builtin_config(Band::FR3)), 192);
}

TEST(SystemModel, SymbolsPerFrameScalesWithSpacing) {
    auto cfg = builtin_config(Band::FR1);
    const int m30 = symbols_per_frame(cfg);
    cfg.subcarrier_spacing_hz = 60e3;
    cfg.symbol_duration_s = 17.84e-6;
    EXPECT_EQ(symbols_per_frame(cfg), 2 * m30);
}

TEST(SystemModel, CombOneAllowed) {
    auto cfg = builtin_config(Band::FR2);
    cfg.prs.comb_size = 1;
    EXPECT_NO_THROW(validate(cfg));
    EXPECT_EQ(symbols_per_frame(cfg), 768);
    EXPECT_DOUBLE_EQ(doppler_sampling_period(cfg), cfg.symbol_duration_s);
}

TEST(SystemModel, ArrayGainMatchesOracle) {
    for (int i = 0; i < 3; ++i) {
        const auto cfg = builtin_config(kBands[i]);
        EXPECT_NEAR(linear_to_db(array_gain(cfg)), static_cast<double>(oracle::array_gain_db(oracle::bands[i])), 1e-9);
    }
    EXPECT_NEAR(linear_to_db(array_gain(builtin_config(Band::FR1))), 25.8, 0.1);
}

TEST(SystemModel, ReceiveGainDefaultsToTransmit) {
    auto cfg = builtin_config(Band::FR3);
    EXPECT_DOUBLE_EQ(receive_gain(cfg), array_gain(cfg));
    cfg.receive_array_gain = Gain::from_db(20.0);
    EXPECT_NEAR(receive_gain(cfg), 100.0, 1e-9);
}

TEST(SystemModel, IndoorPowerFromEmfLimit) {
    // S0 4 pi d'^2 / (G_T T* P*), evaluated by hand for FR2: 10*4pi/(2048*0.8*0.25).
    auto cfg = builtin_config(Band::FR2);
    cfg.indoor_power_override.reset();
    const double expected = 10.0 * 4.0 * oracle::pi / (2048.0 * 0.8 * 0.25);
    EXPECT_NEAR(indoor_power_limit(cfg).power.value, expected, 1e-12);
    EXPECT_FALSE(indoor_power_limit(cfg).warning);
}

TEST(SystemModel, IndoorOverrideAboveLimitWarns) {
    const auto ip = indoor_power_limit(builtin_config(Band::FR2));
    EXPECT_NEAR(ip.power.dbm(), 25.0, 1e-9);
    ASSERT_TRUE(ip.warning);
    EXPECT_NE(ip.warning->find("EMF"), std::string::npos);
}

TEST(SystemModel, SlotDurationNumerology) {
    EXPECT_DOUBLE_EQ(slot_duration(15e3), 1e-3);
    EXPECT_DOUBLE_EQ(slot_duration(240e3), 1e-3 / 16);
    EXPECT_THROW(slot_duration(45e3), InputError);
    EXPECT_THROW(slot_duration(480e3), InputError);
    try {
        slot_duration(45e3);
    } catch (const InputError &e) {
        EXPECT_NE(std::string(e.what()).find("unsupported numerology"), std::string::npos);
    }
}

TEST(SystemModel, OccupiedBandwidthFitsNominal) {
    for (Band b : kBands) {
        const auto cfg = builtin_config(b);
        EXPECT_LE(cfg.occupied_bandwidth(), *cfg.nominal_bandwidth_hz);
        EXPECT_GE(cfg.occupied_bandwidth(), 0.9 * *cfg.nominal_bandwidth_hz);
    }
    auto cfg = builtin_config(Band::FR1);
    cfg.num_subcarriers = 7000;
    EXPECT_EQ(field_of(cfg), "num_subcarriers");
}

TEST(SystemModel, ValidationNamesField) {
    auto cfg = builtin_config(Band::FR1);
    cfg.prs.comb_size = 5;
    EXPECT_EQ(field_of(cfg), "prs.comb_size");
    cfg = builtin_config(Band::FR1);
    cfg.prs.comb_size = 4;
    EXPECT_EQ(field_of(cfg), "");
    cfg.prs.symbols_per_slot = 6;
    EXPECT_EQ(field_of(cfg), "prs.comb_size");
    cfg = builtin_config(Band::FR1);
    cfg.symbol_duration_s = 10e-6;
    EXPECT_EQ(field_of(cfg), "symbol_duration_s");
    cfg = builtin_config(Band::FR1);
    cfg.array.rows = 0;
    EXPECT_EQ(field_of(cfg), "array.rows");
    cfg = builtin_config(Band::FR1);
    cfg.prs.tdd_duty_cycle = 1.5;
    EXPECT_EQ(field_of(cfg), "prs.tdd_duty_cycle");
    cfg = builtin_config(Band::FR1);
    cfg.carrier_frequency_hz = -1.0;
    EXPECT_EQ(field_of(cfg), "carrier_frequency_hz");
}

TEST(SystemModel, DeriveBundlesDerivedValues) {
    const auto cfg = builtin_config(Band::FR3);
    const auto d = derive(cfg);
    EXPECT_EQ(d.symbols_per_frame, 192);
    EXPECT_DOUBLE_EQ(d.doppler_sampling_period, 2 * 17.84e-6);
    EXPECT_DOUBLE_EQ(d.array_gain, 2048.0);
}

TEST(SystemModel, BandNames) {
    EXPECT_EQ(band_from_string("FR2"), Band::FR2);
    EXPECT_EQ(band_from_string("fr3"), Band::FR3);
    EXPECT_EQ(band_from_string("x"), Band::Custom);
    EXPECT_EQ(to_string(Band::FR1), "FR1");
}
