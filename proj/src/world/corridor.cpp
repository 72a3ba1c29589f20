#include "corridorsim/world/corridor.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::world {

namespace {
constexpr double kTileTol = 1e-9;  // m, tolerance for segment tiling checks
}

CorridorMap build_corridor(const CorridorSpec& spec) {
    if (spec.length <= 0) throw ConfigError("corridor length must be positive");
    if (spec.lanes_per_direction < 1) throw ConfigError("need at least one lane");
    if (spec.lane_width <= 0) throw ConfigError("lane width must be positive");
    if (spec.segments.empty()) throw ConfigError("segment list is empty");

    auto segments = spec.segments;
    std::sort(segments.begin(), segments.end(),
              [](const Segment& a, const Segment& b) { return a.start_s < b.start_s; });

    double cursor = 0.0;
    for (const auto& seg : segments) {
        if (seg.end_s <= seg.start_s) throw ConfigError("segment with non-positive extent");
        if (seg.speed_limit <= 0) throw ConfigError("segment speed limit must be positive");
        if (std::abs(seg.start_s - cursor) > kTileTol) {
            throw ConfigError(seg.start_s > cursor ? "gap between segments" : "overlapping segments");
        }
        cursor = seg.end_s;
    }
    if (std::abs(cursor - spec.length) > kTileTol)
        throw ConfigError("segments do not tile the corridor length");

    for (const auto& head : spec.signals) {
        if (head.s < 0.0 || head.s > spec.length)
            throw ConfigError("signal outside corridor");
        if (head.has_fixed) {
            if (head.fixed.cycle.empty()) throw ConfigError("fixed signal with empty cycle");
            for (const auto& ph : head.fixed.cycle)
                if (ph.duration <= 0) throw ConfigError("fixed cycle phase with non-positive duration");
        } else {
            if (head.actuated.min_green > head.actuated.max_green)
                throw ConfigError("actuated min_green exceeds max_green");
            if (head.actuated.min_green <= 0 || head.actuated.gap_out <= 0)
                throw ConfigError("actuated timing must be positive");
        }
    }

    for (const auto& stop : spec.bus_stops) {
        if (stop.s < 0.0 || stop.s > spec.length) throw ConfigError("bus stop outside corridor");
    }

    CorridorMap map;
    map.length = spec.length;
    map.lanes_per_direction = spec.lanes_per_direction;
    map.lane_width = spec.lane_width;
    map.segments = std::move(segments);
    map.signals = spec.signals;
    map.bus_stops = spec.bus_stops;
    map.landmarks = spec.landmarks;
    map.curb_y = 0.0;
    return map;
}

}  // namespace csim::world
