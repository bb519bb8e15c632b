#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "eprb/rng.hpp"

namespace eprb
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

//! Wrap any real angle onto [0, 2*pi).
double normalize_angle(double radians) noexcept;

//! Thrown for parameter sets that violate a domain invariant.
class InvalidParameter : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * Physics knobs of an observation station.
 *
 * Voltages are stored with the laboratory sign convention: the signal and the
 * photon-identification threshold are negative and lie in
 * [-v_max_mag, -v_min_mag].
 */
class ModelParams
{
  public:
    ModelParams(double exponent, double v_min_mag, double v_max_mag,
                double threshold);

    double exponent() const noexcept { return exponent_; }
    double v_min_mag() const noexcept { return v_min_mag_; }
    double v_max_mag() const noexcept { return v_max_mag_; }
    double threshold() const noexcept { return threshold_; }

    //! Lowest reachable voltage, -v_max_mag.
    double v_bottom() const noexcept { return -v_max_mag_; }
    //! Highest reachable voltage, -v_min_mag.
    double v_top() const noexcept { return -v_min_mag_; }

    //! Same station physics with a different threshold.
    ModelParams with_threshold(double threshold) const
    {
        return {exponent_, v_min_mag_, v_max_mag_, threshold};
    }

    //! Threshold at the top of the range: every detection event is a photon.
    ModelParams without_threshold() const { return with_threshold(v_top()); }

  private:
    double exponent_;
    double v_min_mag_;
    double v_max_mag_;
    double threshold_;
};

//! Analyzer orientation, kept in [0, 2*pi).
class Setting
{
  public:
    constexpr Setting() = default;
    explicit Setting(double radians) : angle_{normalize_angle(radians)} {}

    double angle() const noexcept { return angle_; }

    friend bool operator==(Setting, Setting) = default;

  private:
    double angle_ = 0;
};

//! The two local uniforms a station consumes per event.
struct RandomPair
{
    double r = 0;
    double r_hat = 0;
};

struct StationOutcome
{
    int x = 1;  // +1 or -1
    double v = 0;

    friend bool operator==(StationOutcome const&, StationOutcome const&) = default;
};

//---------------------------------------------------------------------------//
// Station response
//---------------------------------------------------------------------------//

/*!
 * Map (setting, polarization, local draws) to an outcome.
 *
 * With c = cos 2(a - phi) and s = sin 2(a - phi):
 *   x = +1 if 1 + c - 2r > 0, otherwise -1
 *   v = r_hat |s|^d (V_max - V_min) - V_max
 */
StationOutcome station_respond(Setting a, double phi, RandomPair draws,
                               ModelParams const& p) noexcept;

//! Photon flag: 1 iff the voltage lies strictly below the threshold.
constexpr int identify_photon(double v, double threshold) noexcept
{
    return threshold - v > 0 ? 1 : 0;
}

/*!
 * Empirical frequency of x = +1 at a fixed polarization over n draws of r.
 * Draws come from the malus stream of a counter generator keyed by seed.
 */
double malus_frequency(Setting a, double phi, std::uint64_t n,
                       std::uint64_t seed);

}  // namespace eprb
