#include "corridorsim/stations/placement.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/csv.hpp"
#include "corridorsim/common/error.hpp"

namespace csim::stations {

const char* to_string(Modality m) {
    switch (m) {
        case Modality::Lidar: return "lidar";
        case Modality::Camera: return "camera";
        case Modality::Infrared: return "infrared";
    }
    return "lidar";
}

const char* to_string(Condition c) {
    switch (c) {
        case Condition::Day: return "day";
        case Condition::Night: return "night";
        case Condition::Rain: return "rain";
    }
    return "day";
}

Condition condition_from_string(const std::string& s) {
    if (s == "day") return Condition::Day;
    if (s == "night") return Condition::Night;
    if (s == "rain") return Condition::Rain;
    throw ConfigError("unknown condition '" + s + "'");
}

void StationConfig::validate() const {
    if (lidar_radius <= 0) throw ConfigError("lidar radius must be positive");
    if (p_miss < 0 || p_miss >= 1 || p_false < 0 || p_false >= 1)
        throw ConfigError("miss/false rates must be in [0, 1)");
    if (sigma_cam_range < sigma_cam_lat)
        throw ConfigError("camera range sigma must be >= lateral sigma");
    if (frame_rate <= 0) throw ConfigError("frame rate must be positive");
}

void IrStationConfig::validate() const {
    if (power_budget_w > 100.0) throw ConfigError("infrared station power budget exceeds 100 W");
    if (range <= 0) throw ConfigError("infrared range must be positive");
}

std::vector<StationConfig> place_stations(const world::CorridorMap& corridor, double spacing,
                                          CameraAim aim) {
    if (spacing < 60.0 || spacing > 100.0)
        throw PlacementError("station spacing must be within [60, 100] m");

    const double radius = 50.0;
    const double length = corridor.length;
    int count = 1;
    if (length > radius)
        count = static_cast<int>(std::ceil((length - radius) / spacing)) + 1;

    std::vector<StationConfig> stations;
    stations.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        StationConfig cfg;
        cfg.id = k;
        cfg.s = k * spacing;
        cfg.lidar_radius = radius;
        stations.push_back(cfg);
    }

    // Each camera watches the section in front of an adjacent station, so a
    // road user obscured near one station is seen from its neighbour.
    for (int k = 0; k < count; ++k) {
        auto& cfg = stations[static_cast<std::size_t>(k)];
        int neighbor;
        if (count == 1) {
            neighbor = k;  // single station: camera watches its own section
        } else if (aim == CameraAim::Downstream) {
            neighbor = (k + 1 < count) ? k + 1 : k - 1;
        } else {
            neighbor = (k - 1 >= 0) ? k - 1 : k + 1;
        }
        const double ns = stations[static_cast<std::size_t>(neighbor)].s;
        cfg.camera_target_start = ns - spacing / 2.0;
        cfg.camera_target_end = ns + spacing / 2.0;
    }
    return stations;
}

std::vector<IrStationConfig> place_ir_stations(const world::CorridorMap& corridor, double spacing) {
    if (spacing <= 0.0) throw PlacementError("infrared spacing must be positive");
    const double length = corridor.length;
    IrStationConfig proto;
    int count = 1;
    if (length > proto.range)
        count = static_cast<int>(std::ceil((length - proto.range) / spacing)) + 1;
    std::vector<IrStationConfig> out;
    for (int k = 0; k < count; ++k) {
        IrStationConfig cfg;
        cfg.id = k;
        cfg.s = k * spacing;
        cfg.spacing_nominal = spacing;
        out.push_back(cfg);
    }
    return out;
}

std::string station_layout_csv(const std::vector<StationConfig>& stations) {
    std::string out = "station_id,s,lidar_radius,camera_target_start,camera_target_end\n";
    for (const auto& st : stations) {
        out += std::to_string(st.id) + "," + fmt_f6(st.s) + "," + fmt_f6(st.lidar_radius) + "," +
               fmt_f6(st.camera_target_start) + "," + fmt_f6(st.camera_target_end) + "\n";
    }
    return out;
}

CoverageReport coverage_check(const std::vector<StationConfig>& stations,
                              const world::CorridorMap& corridor) {
    CoverageReport report;
    const double length = corridor.length;

    // Interval union over the road axis.
    std::vector<std::pair<double, double>> intervals;
    for (const auto& st : stations) {
        const double a = std::max(0.0, st.s - st.lidar_radius);
        const double b = std::min(length, st.s + st.lidar_radius);
        if (b > a) intervals.emplace_back(a, b);
    }
    std::sort(intervals.begin(), intervals.end());

    double cursor = 0.0;
    for (const auto& [a, b] : intervals) {
        if (a > cursor + 1e-9) report.gaps.emplace_back(cursor, a);
        cursor = std::max(cursor, b);
    }
    if (cursor < length - 1e-9) report.gaps.emplace_back(cursor, length);
    report.covered = report.gaps.empty();

    if (report.covered && !stations.empty()) {
        // Min point-in-disk count, probed densely plus at interval endpoints.
        int redundancy = static_cast<int>(stations.size());
        auto count_at = [&](double s) {
            int n = 0;
            for (const auto& st : stations)
                if (std::abs(s - st.s) <= st.lidar_radius) ++n;
            return n;
        };
        for (double s = 0.0; s <= length; s += 0.5) redundancy = std::min(redundancy, count_at(s));
        for (const auto& st : stations) {
            for (double edge : {st.s - st.lidar_radius, st.s + st.lidar_radius}) {
                if (edge >= 0.0 && edge <= length) redundancy = std::min(redundancy, count_at(edge));
            }
        }
        report.redundancy = redundancy;
    }
    return report;
}

}  // namespace csim::stations
