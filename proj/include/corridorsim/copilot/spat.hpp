#pragma once

#include <vector>

#include "corridorsim/world/signal.hpp"

namespace csim::copilot {

struct SpatPhase {
    world::SignalState state = world::SignalState::Red;
    double start = 0.0;  // s, absolute
    double end = 0.0;
    double confidence = 1.0;
};

struct SpatForecast {
    int signal_id = 0;
    double msg_time = 0.0;
    std::vector<SpatPhase> phases;  // contiguous, ordered

    bool empty() const { return phases.empty(); }
};

// Builds the forecast a signal controller would publish at time t. Fixed
// plans are exact (confidence 1); actuated plans use the controller's naive
// continuation with the configured confidence.
SpatForecast make_forecast(const world::SignalRuntime& runtime, double t, double horizon,
                           double actuated_confidence = 0.6);

// Usable iff every phase overlapping the ego's feasible arrival window
// [t_min, t_max] carries confidence >= c_min.
bool confidence_gate(const SpatForecast& forecast, double arrival_min, double arrival_max,
                     double c_min);

}  // namespace csim::copilot
