#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csim::world {

enum class VehicleClass : std::uint8_t { Car = 0, Truck = 1, Bus = 2, Bicycle = 3, Pedestrian = 4 };

const char* to_string(VehicleClass c);
VehicleClass vehicle_class_from_string(const std::string& s);

// Default body dimensions per class, used by spawning and by trajectory
// analytics that only have the class column.
double default_length(VehicleClass c);
double default_width(VehicleClass c);
bool is_motorized(VehicleClass c);

enum class SegmentKind : std::uint8_t { Urban = 0, Rural = 1, Highway = 2 };

const char* to_string(SegmentKind k);
SegmentKind segment_kind_from_string(const std::string& s);

struct Segment {
    double start_s = 0.0;      // m
    double end_s = 0.0;        // m
    SegmentKind kind = SegmentKind::Urban;
    double speed_limit = 0.0;  // m/s
};

enum class SignalState : std::uint8_t { Red = 0, Green = 1, Amber = 2 };

const char* to_string(SignalState s);

struct FixedPhase {
    SignalState state = SignalState::Green;
    double duration = 0.0;  // s
};

struct FixedPlan {
    std::vector<FixedPhase> cycle;
    double offset = 0.0;  // s, shifts the cycle origin
};

struct ActuatedPlan {
    double min_green = 8.0;    // s
    double max_green = 40.0;   // s
    double gap_out = 3.0;      // s without detector occupancy that ends green
    double amber = 3.0;        // s
    double red_clearance = 15.0;  // s between green windows
};

struct SignalHead {
    int id = 0;
    double s = 0.0;  // m, stop line position
    bool has_fixed = true;
    FixedPlan fixed;
    ActuatedPlan actuated;
    bool priority_request_hook = false;
};

struct BusStop {
    double s = 0.0;
    double lateral_offset = 0.0;  // m from outermost lane centre toward the curb
};

struct Landmark {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

struct CorridorMap {
    double length = 0.0;          // m
    int lanes_per_direction = 1;  // single direction is modelled
    double lane_width = 3.5;      // m
    std::vector<Segment> segments;
    std::vector<SignalHead> signals;
    std::vector<BusStop> bus_stops;
    std::vector<Landmark> landmarks;
    double curb_y = 0.0;  // m, structural road edge on lane 0's side

    double speed_limit_at(double s) const;
    double lane_center_y(int lane) const { return (lane + 0.5) * lane_width; }
};

// Plain-data corridor description, filled from a scenario config file.
struct CorridorSpec {
    double length = 0.0;
    int lanes_per_direction = 1;
    double lane_width = 3.5;
    std::vector<Segment> segments;
    std::vector<SignalHead> signals;
    std::vector<BusStop> bus_stops;
    std::vector<Landmark> landmarks;
};

struct VehicleState {
    int id = 0;
    VehicleClass cls = VehicleClass::Car;
    double s = 0.0;     // m along corridor
    int lane = 0;       // index, 0 = outermost (curb side)
    double lat = 0.0;   // m offset within lane
    double v = 0.0;     // m/s
    double a = 0.0;     // m/s^2
    double length = 4.5;
    double width = 1.8;
    double t = 0.0;     // s, state timestamp
};

struct DriverParams {
    double v0 = 13.89;        // m/s desired speed
    double T = 1.5;           // s time headway
    double a_max = 1.5;       // m/s^2
    double b_comf = 2.0;      // m/s^2 comfortable decel
    double s0 = 2.0;          // m standstill gap
    double politeness = 0.3;  // MOBIL p
    double delta_a_th = 0.2;  // m/s^2 lane-change incentive threshold
    double b_safe = 4.0;      // m/s^2 max decel imposed on the new follower
    double b_emergency = 6.0; // m/s^2 hard cap on commanded decel

    void validate() const;  // throws ConfigError
};

}  // namespace csim::world
