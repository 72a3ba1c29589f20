#pragma once

#include <vector>

#include "corridorsim/stations/types.hpp"
#include "corridorsim/world/types.hpp"

namespace csim::stations {

// Places stations from corridor start at the given spacing until the LiDAR
// disks cover [0, length]. Spacing must be within [60, 100] m; throws
// PlacementError otherwise. Camera targets point at the downstream neighbour
// by default (the last station looks back upstream).
enum class CameraAim : std::uint8_t { Downstream = 0, Upstream = 1 };

std::vector<StationConfig> place_stations(const world::CorridorMap& corridor, double spacing,
                                          CameraAim aim = CameraAim::Downstream);

// Same geometry for the infrared variant (nominal 100 m spacing, no cameras).
std::vector<IrStationConfig> place_ir_stations(const world::CorridorMap& corridor, double spacing);

struct CoverageReport {
    bool covered = false;
    std::vector<std::pair<double, double>> gaps;  // uncovered intervals of [0, length]
    int redundancy = 0;                           // min station count over covered points
};

CoverageReport coverage_check(const std::vector<StationConfig>& stations,
                              const world::CorridorMap& corridor);

// CSV columns: station_id,s,lidar_radius,camera_target_start,camera_target_end
std::string station_layout_csv(const std::vector<StationConfig>& stations);

}  // namespace csim::stations
