#include "corridorsim/world/types.hpp"

#include <algorithm>

#include "corridorsim/common/error.hpp"

namespace csim::world {

const char* to_string(VehicleClass c) {
    switch (c) {
        case VehicleClass::Car: return "car";
        case VehicleClass::Truck: return "truck";
        case VehicleClass::Bus: return "bus";
        case VehicleClass::Bicycle: return "bicycle";
        case VehicleClass::Pedestrian: return "pedestrian";
    }
    return "car";
}

VehicleClass vehicle_class_from_string(const std::string& s) {
    if (s == "car") return VehicleClass::Car;
    if (s == "truck") return VehicleClass::Truck;
    if (s == "bus") return VehicleClass::Bus;
    if (s == "bicycle") return VehicleClass::Bicycle;
    if (s == "pedestrian") return VehicleClass::Pedestrian;
    throw ConfigError("unknown vehicle class '" + s + "'");
}

double default_length(VehicleClass c) {
    switch (c) {
        case VehicleClass::Car: return 4.5;
        case VehicleClass::Truck: return 12.0;
        case VehicleClass::Bus: return 8.0;
        case VehicleClass::Bicycle: return 1.8;
        case VehicleClass::Pedestrian: return 0.5;
    }
    return 4.5;
}

double default_width(VehicleClass c) {
    switch (c) {
        case VehicleClass::Car: return 1.8;
        case VehicleClass::Truck: return 2.5;
        case VehicleClass::Bus: return 2.4;
        case VehicleClass::Bicycle: return 0.6;
        case VehicleClass::Pedestrian: return 0.5;
    }
    return 1.8;
}

bool is_motorized(VehicleClass c) {
    return c == VehicleClass::Car || c == VehicleClass::Truck || c == VehicleClass::Bus;
}

const char* to_string(SegmentKind k) {
    switch (k) {
        case SegmentKind::Urban: return "urban";
        case SegmentKind::Rural: return "rural";
        case SegmentKind::Highway: return "highway";
    }
    return "urban";
}

SegmentKind segment_kind_from_string(const std::string& s) {
    if (s == "urban") return SegmentKind::Urban;
    if (s == "rural") return SegmentKind::Rural;
    if (s == "highway") return SegmentKind::Highway;
    throw ConfigError("unknown segment kind '" + s + "'");
}

const char* to_string(SignalState s) {
    switch (s) {
        case SignalState::Red: return "RED";
        case SignalState::Green: return "GREEN";
        case SignalState::Amber: return "AMBER";
    }
    return "RED";
}

double CorridorMap::speed_limit_at(double s) const {
    const double q = std::clamp(s, 0.0, length);
    for (const auto& seg : segments) {
        if (q >= seg.start_s && q <= seg.end_s) return seg.speed_limit;
    }
    return segments.empty() ? 13.89 : segments.back().speed_limit;
}

void DriverParams::validate() const {
    if (v0 <= 0 || T <= 0 || a_max <= 0 || b_comf <= 0 || s0 <= 0)
        throw ConfigError("driver params must be positive");
    if (politeness < 0.0 || politeness > 1.0)
        throw ConfigError("politeness outside [0, 1]");
    if (delta_a_th <= 0 || b_safe <= 0 || b_emergency <= 0)
        throw ConfigError("driver thresholds must be positive");
    if (b_safe < b_comf) throw ConfigError("b_safe must be >= b_comf");
}

}  // namespace csim::world
