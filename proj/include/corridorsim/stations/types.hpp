#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "corridorsim/world/types.hpp"

namespace csim::stations {

enum class Modality : std::uint8_t { Lidar = 0, Camera = 1, Infrared = 2 };

const char* to_string(Modality m);

struct StationConfig {
    int id = 0;
    double s = 0.0;             // m, mount position along the corridor
    double standoff = 6.0;      // m, lateral distance from the road axis (occlusion geometry)
    double lidar_radius = 50.0; // m
    double camera_target_start = 0.0;  // m, section near an adjacent station
    double camera_target_end = 0.0;
    double proc_latency = 0.05;  // s, edge compute delay before uplink
    double sigma_lidar = 0.05;   // m, isotropic
    double sigma_cam_lat = 0.10; // m
    double sigma_cam_range = 0.50;  // m, must be >= sigma_cam_lat
    double p_miss = 0.05;
    double p_false = 0.01;
    double frame_rate = 10.0;  // Hz

    void validate() const;  // throws ConfigError
};

enum class Condition : std::uint8_t { Day = 0, Night = 1, Rain = 2 };

const char* to_string(Condition c);
Condition condition_from_string(const std::string& s);

struct IrQuality {
    double p_miss = 0.05;
    double sigma = 0.2;  // m, isotropic
};

struct IrStationConfig {
    int id = 0;
    double s = 0.0;
    double standoff = 6.0;
    double range = 55.0;          // m of road covered each way
    double spacing_nominal = 100.0;
    double power_budget_w = 100.0;  // metadata; capped at 100
    double proc_latency = 0.05;
    double frame_rate = 10.0;
    std::map<Condition, IrQuality> quality_by_condition = {
        {Condition::Day, {0.08, 0.25}},
        {Condition::Night, {0.02, 0.15}},
        {Condition::Rain, {0.10, 0.30}},
    };

    void validate() const;
};

// One sensed road user. The covariance is the generating noise covariance;
// downstream fusion correctness depends on that honesty.
struct DetectedObject {
    int station_id = 0;
    int local_id = 0;  // per-frame index, never persisted across frames
    world::VehicleClass cls = world::VehicleClass::Car;
    Modality modality = Modality::Lidar;
    double x = 0.0, y = 0.0;
    double vx = 0.0, vy = 0.0;
    std::array<double, 3> cov{0.0, 0.0, 0.0};  // (xx, xy, yy) position covariance
    double confidence = 1.0;
};

struct ObjectListMessage {
    int station_id = 0;
    double frame_time = 0.0;  // s, aligned to the frame grid
    std::vector<DetectedObject> objects;

    // Nominal wire size used for data-rate accounting.
    static constexpr std::size_t kHeaderBytes = 16;
    static constexpr std::size_t kObjectBytes = 64;
    std::size_t payload_bytes() const { return kHeaderBytes + kObjectBytes * objects.size(); }
};

}  // namespace csim::stations
