#pragma once

#include <vector>

#include "corridorsim/world/types.hpp"

namespace csim::world {

// Minimum-jerk style lateral transition, zero velocity/acceleration at both ends.
// tau in [0, 1].
double quintic_blend(double tau);

struct LateralSample {
    double t = 0.0;    // s from maneuver start
    double lat = 0.0;  // m, absolute lateral position (road frame)
};

// Continuous lateral sweep from y_start to y_target over `duration` seconds,
// sampled at `sample_rate` Hz including both endpoints. Lateral progress is
// monotone. Throws InvalidDuration when duration <= 0.
std::vector<LateralSample> lane_change_execute(double y_start, double y_target, double duration,
                                               double sample_rate);

// Pointwise evaluation for the in-simulation maneuver state.
double lane_change_lat_at(double y_start, double y_target, double duration, double t);

}  // namespace csim::world
