#include "corridorsim/copilot/spat.hpp"

namespace csim::copilot {

SpatForecast make_forecast(const world::SignalRuntime& runtime, double t, double horizon,
                           double actuated_confidence) {
    SpatForecast forecast;
    forecast.signal_id = runtime.head().id;
    forecast.msg_time = t;
    const double conf = runtime.head().has_fixed ? 1.0 : actuated_confidence;
    for (const auto& win : runtime.schedule(t, horizon)) {
        forecast.phases.push_back({win.state, win.start, win.end, conf});
    }
    return forecast;
}

bool confidence_gate(const SpatForecast& forecast, double arrival_min, double arrival_max,
                     double c_min) {
    for (const auto& ph : forecast.phases) {
        const bool overlaps = ph.end > arrival_min && ph.start < arrival_max;
        if (overlaps && ph.confidence < c_min) return false;
    }
    return true;
}

}  // namespace csim::copilot
