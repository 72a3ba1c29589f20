#include "corridorsim/world/lane_change.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::world {

double quintic_blend(double tau) {
    tau = std::clamp(tau, 0.0, 1.0);
    const double t3 = tau * tau * tau;
    return t3 * (10.0 + tau * (-15.0 + 6.0 * tau));
}

double lane_change_lat_at(double y_start, double y_target, double duration, double t) {
    if (duration <= 0.0) throw InvalidDuration("lane change duration must be positive");
    if (t <= 0.0) return y_start;
    if (t >= duration) return y_target;
    return y_start + (y_target - y_start) * quintic_blend(t / duration);
}

std::vector<LateralSample> lane_change_execute(double y_start, double y_target, double duration,
                                               double sample_rate) {
    if (duration <= 0.0) throw InvalidDuration("lane change duration must be positive");
    if (sample_rate <= 0.0) throw InvalidDuration("sample rate must be positive");

    const int steps = static_cast<int>(std::lround(duration * sample_rate));
    std::vector<LateralSample> samples;
    samples.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        const double t = (k == steps) ? duration : k / sample_rate;
        samples.push_back({t, lane_change_lat_at(y_start, y_target, duration, t)});
    }
    // Exact endpoints regardless of rounding in the time grid.
    samples.front().lat = y_start;
    samples.back().lat = y_target;
    return samples;
}

}  // namespace csim::world
