// SPDX-License-Identifier: Apache-2.0

#ifndef ISAC_TARGET_HPP
#define ISAC_TARGET_HPP

namespace isac {

/// A radar object as seen from the sensing node. Angles in degrees.
struct Target {
    double rcs_m2 = 1.0;
    double range_m = 100.0;
    double speed_mps = 0.0; // radial; positive speeds map to positive Doppler bins
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

} // namespace isac

#endif // ISAC_TARGET_HPP
