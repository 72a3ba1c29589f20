#pragma once

#include <vector>

#include "corridorsim/common/rng.hpp"
#include "corridorsim/stations/types.hpp"
#include "corridorsim/world/world.hpp"

namespace csim::stations {

// Velocity measurement noise scales with the position noise of the same
// modality axis. The fusion side assumes the identical factor.
constexpr double kVelNoiseFactor = 2.0;  // 1/s

// Angular interval subtended by an object's footprint from a viewpoint.
struct BearingBand {
    double lo = 0.0;
    double hi = 0.0;
    double range = 0.0;  // m to object centre
};

BearingBand bearing_band(double view_x, double view_y, const world::World::GroundObject& obj);

// 1D bearing-band shadowing: an object is LiDAR-occluded when a strictly
// nearer object covers at least half of its angular interval.
bool lidar_occluded(const StationConfig& station,
                    const std::vector<world::World::GroundObject>& objects, std::size_t target);

// One frame of one station: a LiDAR detection per visible in-range object and
// a camera detection per object inside the camera target, with per-modality
// Gaussian noise, misses and appended false positives.
ObjectListMessage sense_tick(const StationConfig& station,
                             const std::vector<world::World::GroundObject>& objects,
                             double frame_time, Rng& rng);

ObjectListMessage ir_sense_tick(const IrStationConfig& station,
                                const std::vector<world::World::GroundObject>& objects,
                                double frame_time, Condition condition, Rng& rng);

struct DataRateRow {
    int station_id = 0;
    double raw_bytes_per_s = 1e8;  // raw sensor volume per station
    double objectlist_bytes_per_s = 0.0;
    double reduction_factor = 0.0;
};

// Pure schema arithmetic for a constant per-frame object count.
double objectlist_bytes_per_s(double objects_per_frame, double frame_rate);

// Report from accumulated per-station payload byte counts over a run.
std::vector<DataRateRow> data_rate_report(const std::vector<std::pair<int, std::size_t>>& bytes_sent,
                                          double duration);

}  // namespace csim::stations
