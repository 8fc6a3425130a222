// SPDX-License-Identifier: Apache-2.0
//
// Scalar quantities, dB conversions and physical constants.

#ifndef ISAC_QUANTITIES_HPP
#define ISAC_QUANTITIES_HPP

#include <cmath>
#include <compare>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isac {

/// Raised for any caller-supplied value that violates a documented precondition.
/// `field()` carries the offending field path when one is known (e.g. "clutter[1].range_m").
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string &what, std::string field = {})
        : std::invalid_argument(field.empty() ? what : field + ": " + what), message_(what), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }
    const std::string &message() const noexcept { return message_; }

private:
    std::string message_;
    std::string field_;
};

namespace constants {
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double thermal_noise_density_dbm_hz = -174.0; // dBm/Hz
inline constexpr double pi = std::numbers::pi;
inline constexpr double four_pi_cubed = 64.0 * pi * pi * pi;
} // namespace constants

inline double db_to_linear(double db) {
    if (!std::isfinite(db)) throw InputError("dB value must be finite");
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InputError("linear ratio must be positive and finite");
    return 10.0 * std::log10(ratio);
}

/// Power in watts. dBm only at the boundary.
struct Watts {
    double value = 0.0;

    static Watts from_dbm(double dbm) { return Watts{db_to_linear(dbm) * 1e-3}; }
    double dbm() const { return linear_to_db(value * 1e3); }

    auto operator<=>(const Watts &) const = default;
};

/// Dimensionless power ratio in linear form (gains, losses, noise figure, SNR).
struct Gain {
    double value = 1.0;

    static Gain from_db(double db) { return Gain{db_to_linear(db)}; }
    double db() const { return linear_to_db(value); }

    auto operator<=>(const Gain &) const = default;
};

/// Thermal noise density N0 in W/Hz.
inline double thermal_noise_density() {
    return Watts::from_dbm(constants::thermal_noise_density_dbm_hz).value;
}

inline double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

} // namespace isac

#endif // ISAC_QUANTITIES_HPP
