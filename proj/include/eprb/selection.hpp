#pragma once

#include "eprb/model.hpp"

namespace eprb
{

// Voltage thresholds, local time windows and time-coincidence windows are
// three views of one selection. The voltage range is rescaled onto a
// dimensionless time in [0, 1] with the bottom of the range at t = 0.

//! Dimensionless time of a voltage: (v - v_bottom) / (v_top - v_bottom).
double to_time(double v, ModelParams const& p);

//! Dimensionless window corresponding to the threshold in p.
inline double window_of(ModelParams const& p) { return to_time(p.threshold(), p); }

struct WindowSelection
{
    bool pass1 = false;
    bool pass2 = false;
    bool pass_pair = false;
    //! |t1 - t2| <= W
    bool coincident = false;
};

/*!
 * Local window test at both stations plus the coincidence predicate.
 * A station passes iff t < W, the same strict boundary as identify_photon.
 */
constexpr WindowSelection select_by_window(double t1, double t2,
                                           double window) noexcept
{
    WindowSelection sel;
    sel.pass1 = t1 < window;
    sel.pass2 = t2 < window;
    sel.pass_pair = sel.pass1 && sel.pass2;
    double const gap = t1 > t2 ? t1 - t2 : t2 - t1;
    sel.coincident = gap <= window;
    return sel;
}

}  // namespace eprb
