#include "corridorsim/stations/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::stations {

BearingBand bearing_band(double view_x, double view_y, const world::World::GroundObject& obj) {
    BearingBand band;
    band.range = std::hypot(obj.x - view_x, obj.y - view_y);
    double lo = 1e18, hi = -1e18;
    for (int cx : {-1, 1}) {
        for (int cy : {-1, 1}) {
            const double px = obj.x + cx * obj.length / 2.0 - view_x;
            const double py = obj.y + cy * obj.width / 2.0 - view_y;
            const double ang = std::atan2(py, px);
            lo = std::min(lo, ang);
            hi = std::max(hi, ang);
        }
    }
    band.lo = lo;
    band.hi = hi;
    return band;
}

bool lidar_occluded(const StationConfig& station,
                    const std::vector<world::World::GroundObject>& objects, std::size_t target) {
    // Station viewpoint sits at a lateral standoff below lane 0, so every
    // road object lies in the upper half plane and bearings never wrap.
    const double vx = station.s;
    const double vy = -station.standoff;
    const BearingBand self = bearing_band(vx, vy, objects[target]);
    const double width = self.hi - self.lo;
    if (width <= 0.0) return false;

    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (i == target) continue;
        const BearingBand other = bearing_band(vx, vy, objects[i]);
        if (other.range >= self.range) continue;  // only nearer objects shadow
        const double overlap = std::min(self.hi, other.hi) - std::max(self.lo, other.lo);
        if (overlap >= 0.5 * width) return true;
    }
    return false;
}

namespace {

void add_noise_isotropic(DetectedObject& det, double sigma, Rng& rng) {
    det.cov = {sigma * sigma, 0.0, sigma * sigma};
    if (sigma <= 0.0) return;
    std::normal_distribution<double> n(0.0, sigma);
    det.x += n(rng);
    det.y += n(rng);
    std::normal_distribution<double> nv(0.0, kVelNoiseFactor * sigma);
    det.vx += nv(rng);
    det.vy += nv(rng);
}

// Anisotropic camera noise: the range axis points from the station to the
// object ("low accuracy in the distance"), the lateral axis is orthogonal.
void add_noise_camera(DetectedObject& det, double view_x, double view_y, double sigma_range,
                      double sigma_lat, Rng& rng) {
    const double dx = det.x - view_x;
    const double dy = det.y - view_y;
    const double r = std::hypot(dx, dy);
    const double ux = r > 1e-9 ? dx / r : 1.0;
    const double uy = r > 1e-9 ? dy / r : 0.0;

    const double vr = sigma_range * sigma_range;
    const double vl = sigma_lat * sigma_lat;
    det.cov = {vr * ux * ux + vl * uy * uy, (vr - vl) * ux * uy, vr * uy * uy + vl * ux * ux};
    if (sigma_range <= 0.0 && sigma_lat <= 0.0) return;

    std::normal_distribution<double> nr(0.0, sigma_range);
    std::normal_distribution<double> nl(0.0, sigma_lat);
    const double er = nr(rng);
    const double el = nl(rng);
    det.x += er * ux - el * uy;
    det.y += er * uy + el * ux;
    std::normal_distribution<double> nvr(0.0, kVelNoiseFactor * sigma_range);
    std::normal_distribution<double> nvl(0.0, kVelNoiseFactor * sigma_lat);
    const double wr = nvr(rng);
    const double wl = nvl(rng);
    det.vx += wr * ux - wl * uy;
    det.vy += wr * uy + wl * ux;
}

}  // namespace

ObjectListMessage sense_tick(const StationConfig& station,
                             const std::vector<world::World::GroundObject>& objects,
                             double frame_time, Rng& rng) {
    ObjectListMessage msg;
    msg.station_id = station.id;
    msg.frame_time = frame_time;

    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (std::size_t i = 0; i < objects.size(); ++i) {
        const auto& obj = objects[i];
        // Road-projected in-range test, matching the coverage model; the
        // lateral standoff only shapes the occlusion geometry.
        const double range = std::abs(obj.x - station.s);

        // LiDAR: in-range, not shadowed.
        if (range <= station.lidar_radius && !lidar_occluded(station, objects, i)) {
            const bool miss = station.p_miss > 0.0 && u01(rng) < station.p_miss;
            if (!miss) {
                DetectedObject det;
                det.station_id = station.id;
                det.local_id = static_cast<int>(msg.objects.size());
                det.cls = obj.cls;
                det.modality = Modality::Lidar;
                det.x = obj.x;
                det.y = obj.y;
                det.vx = obj.vx;
                det.vy = obj.vy;
                det.confidence = 0.95;
                add_noise_isotropic(det, station.sigma_lidar, rng);
                msg.objects.push_back(det);
            }
        }

        // Camera: covers the section near the adjacent station; not subject
        // to the near-field shadowing (different vantage point).
        if (obj.x >= station.camera_target_start && obj.x <= station.camera_target_end) {
            const bool miss = station.p_miss > 0.0 && u01(rng) < station.p_miss;
            if (!miss) {
                DetectedObject det;
                det.station_id = station.id;
                det.local_id = static_cast<int>(msg.objects.size());
                det.cls = obj.cls;
                det.modality = Modality::Camera;
                det.x = obj.x;
                det.y = obj.y;
                det.vx = obj.vx;
                det.vy = obj.vy;
                det.confidence = 0.8;
                add_noise_camera(det, station.s, -station.standoff, station.sigma_cam_range,
                                 station.sigma_cam_lat, rng);
                msg.objects.push_back(det);
            }
        }
    }

    // False positives appended at rate p_false per frame.
    if (station.p_false > 0.0) {
        std::poisson_distribution<int> fp(station.p_false);
        const int n_false = fp(rng);
        std::uniform_real_distribution<double> ux(station.s - station.lidar_radius,
                                                  station.s + station.lidar_radius);
        std::uniform_real_distribution<double> uy(0.0, 7.0);
        for (int k = 0; k < n_false; ++k) {
            DetectedObject det;
            det.station_id = station.id;
            det.local_id = static_cast<int>(msg.objects.size());
            det.cls = world::VehicleClass::Car;
            det.modality = Modality::Lidar;
            det.x = ux(rng);
            det.y = uy(rng);
            det.confidence = 0.3;
            det.cov = {station.sigma_lidar * station.sigma_lidar, 0.0,
                       station.sigma_lidar * station.sigma_lidar};
            msg.objects.push_back(det);
        }
    }
    return msg;
}

ObjectListMessage ir_sense_tick(const IrStationConfig& station,
                                const std::vector<world::World::GroundObject>& objects,
                                double frame_time, Condition condition, Rng& rng) {
    ObjectListMessage msg;
    msg.station_id = station.id;
    msg.frame_time = frame_time;

    const auto it = station.quality_by_condition.find(condition);
    if (it == station.quality_by_condition.end())
        throw ConfigError("no infrared quality entry for condition");
    const IrQuality q = it->second;

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto& obj : objects) {
        if (std::abs(obj.x - station.s) > station.range) continue;
        const bool miss = q.p_miss > 0.0 && u01(rng) < q.p_miss;
        if (miss) continue;
        DetectedObject det;
        det.station_id = station.id;
        det.local_id = static_cast<int>(msg.objects.size());
        det.cls = obj.cls;
        det.modality = Modality::Infrared;
        det.x = obj.x;
        det.y = obj.y;
        det.vx = obj.vx;
        det.vy = obj.vy;
        det.confidence = 0.85;
        add_noise_isotropic(det, q.sigma, rng);
        msg.objects.push_back(det);
    }
    return msg;
}

double objectlist_bytes_per_s(double objects_per_frame, double frame_rate) {
    return frame_rate * (ObjectListMessage::kHeaderBytes +
                         ObjectListMessage::kObjectBytes * objects_per_frame);
}

std::vector<DataRateRow> data_rate_report(const std::vector<std::pair<int, std::size_t>>& bytes_sent,
                                          double duration) {
    if (duration <= 0.0) throw ConfigError("data rate duration must be positive");
    std::vector<DataRateRow> rows;
    rows.reserve(bytes_sent.size());
    for (const auto& [id, bytes] : bytes_sent) {
        DataRateRow row;
        row.station_id = id;
        row.objectlist_bytes_per_s = static_cast<double>(bytes) / duration;
        row.reduction_factor =
            row.objectlist_bytes_per_s > 0.0 ? row.raw_bytes_per_s / row.objectlist_bytes_per_s : 1e18;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace csim::stations
