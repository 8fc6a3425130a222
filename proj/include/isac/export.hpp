// SPDX-License-Identifier: Apache-2.0
//
// Periodogram and detection export: CSV power map in dB, JSON metadata, JSON detections.

#ifndef ISAC_EXPORT_HPP
#define ISAC_EXPORT_HPP

#include "isac/periodogram.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace isac {

/// First line: comment header with the bin mapping. Then one row per range bin, one
/// column per cross bin, values 10*log10(power) with fixed precision.
inline void write_periodogram_csv(std::ostream &os, const PeriodogramGrid &pgm) {
    char buf[64];
    os << "# axes=" << to_string(pgm.axes) << ";range_bins=" << pgm.range_bins << ";cross_bins=" << pgm.cross_bins;
    std::snprintf(buf, sizeof buf, ";range_per_bin_m=%.12g", pgm.range_per_bin);
    os << buf;
    std::snprintf(buf, sizeof buf, pgm.axes == Axes::RangeDoppler ? ";speed_per_bin_mps=%.12g" : ";naf_per_bin=%.12g",
                  pgm.cross_per_bin);
    os << buf << ";range_pad=" << pgm.range_pad << ";cross_pad=" << pgm.cross_pad << "\n";
    for (int r = 0; r < pgm.range_bins; ++r) {
        for (int c = 0; c < pgm.cross_bins; ++c) {
            const double p = pgm.at(r, c);
            const double db = p > 0.0 ? 10.0 * std::log10(p) : -400.0;
            std::snprintf(buf, sizeof buf, c == 0 ? "%.6f" : ",%.6f", db);
            os << buf;
        }
        os << "\n";
    }
}

inline nlohmann::json periodogram_metadata(const PeriodogramGrid &pgm) {
    nlohmann::json j;
    j["axes"] = std::string(to_string(pgm.axes));
    j["window"] = std::string(to_string(pgm.window));
    j["range_bins"] = pgm.range_bins;
    j["cross_bins"] = pgm.cross_bins;
    j["range_pad"] = pgm.range_pad;
    j["cross_pad"] = pgm.cross_pad;
    j["averaged_slices"] = pgm.averaged_slices;
    j["range_per_bin_m"] = pgm.range_per_bin;
    if (pgm.axes == Axes::RangeDoppler) {
        j["speed_per_bin_mps"] = pgm.cross_per_bin;
    } else {
        j["naf_per_bin"] = pgm.cross_per_bin;
        j["col_spacing_wavelengths"] = pgm.col_spacing;
    }
    j["cross_bins_signed"] = true;
    j["values"] = "dB, row-major, range bin as row";
    j["noise_floor_db"] = 10.0 * std::log10(noise_floor(pgm));
    return j;
}

inline nlohmann::json detections_json(const std::vector<Detection> &dets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &d : dets) {
        nlohmann::json j;
        j["range_m"] = d.range_m;
        if (d.speed_mps) j["speed_mps"] = *d.speed_mps;
        if (d.azimuth_deg) j["azimuth_deg"] = *d.azimuth_deg;
        if (d.elevation_deg) j["elevation_deg"] = *d.elevation_deg;
        j["range_bin"] = d.range_bin;
        j["cross_bin"] = d.cross_bin;
        j["peak_power"] = d.peak_power;
        j["peak_to_floor_db"] = 10.0 * std::log10(d.peak_to_floor);
        arr.push_back(j);
    }
    return arr;
}

} // namespace isac

#endif // ISAC_EXPORT_HPP
