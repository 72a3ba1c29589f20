#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "corridorsim/world/types.hpp"

namespace csim::fusion {

// Fused global object estimate: constant-velocity state (x, y, vx, vy).
struct Track {
    int global_id = 0;
    world::VehicleClass cls = world::VehicleClass::Car;
    Eigen::Vector4d state = Eigen::Vector4d::Zero();
    Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
    double last_update = 0.0;
    std::set<int> contributors;  // station ids seen over the track lifetime
    int contributors_this_frame = 0;
    long age = 0;     // frames since confirmation
    int misses = 0;   // consecutive frames without any matched detection
    int hits = 0;     // consecutive matched frames (candidate confirmation)
    bool confirmed = false;

    // Class majority vote bookkeeping.
    std::array<int, 5> class_votes{};

    double quality() const;
};

struct TwinEntry {
    int global_id = 0;
    world::VehicleClass cls = world::VehicleClass::Car;
    double x = 0.0, y = 0.0;
    double vx = 0.0, vy = 0.0;
    double quality = 0.0;
    int contributors = 0;
};

struct TwinFrame {
    double frame_time = 0.0;
    long server_seq = 0;
    std::vector<TwinEntry> tracks;
};

struct AccuracyReport {
    double rmse = 0.0;      // m, over matched pairs
    double p95_error = 0.0; // m
    double matched_fraction = 0.0;
    long id_switches = 0;
    long matched_pairs = 0;
    long truth_frames = 0;  // ground-truth object-frames in the evaluation window

    // Stratified by station support.
    double p95_multi_contributor = 0.0;  // k >= 2
    double p95_single_contributor = 0.0; // k == 1
};

}  // namespace csim::fusion
