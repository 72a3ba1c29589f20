#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "corridorsim/common/rng.hpp"
#include "corridorsim/world/driver.hpp"
#include "corridorsim/world/signal.hpp"
#include "corridorsim/world/types.hpp"

namespace csim::world {

struct DemandConfig {
    double rate = 0.0;  // veh/s at corridor entry
    // (class, weight) pairs; weights need not sum to 1.
    std::vector<std::pair<VehicleClass, double>> mix = {{VehicleClass::Car, 1.0}};
    double entry_speed_factor = 0.9;  // fraction of the local limit at entry
};

// Scripted non-interacting road user (crossing pedestrian/cyclist).
struct ScriptedActor {
    int id = 0;
    VehicleClass cls = VehicleClass::Pedestrian;
    double x0 = 0.0, y0 = 0.0;
    double vx = 0.0, vy = 0.0;
    double t_start = 0.0, t_end = 0.0;
};

// Executed lane-change record; the extraction oracle for scenario analytics.
struct ManeuverRecord {
    int vehicle_id = 0;
    int from_lane = 0;
    int to_lane = 0;
    double t_start = 0.0;
    double t_end = 0.0;   // filled when the sweep completes
    bool completed = false;
};

struct Vehicle {
    int id = 0;
    VehicleClass cls = VehicleClass::Car;
    DriverParams params;
    double desired_speed_factor = 1.0;  // scales the local speed limit
    double s = 0.0;
    double y = 0.0;  // absolute lateral position, road frame
    double v = 0.0;
    double a = 0.0;
    double length = 4.5;
    double width = 1.8;

    // Lateral maneuver state.
    bool changing = false;
    int lane_from = 0;
    int lane_to = 0;
    double lc_t0 = 0.0;
    double lc_duration = 3.0;
    double lc_y0 = 0.0, lc_y1 = 0.0;
    double last_change_end = -1e9;

    // External longitudinal control (signal co-pilot) for the next step.
    bool has_external_accel = false;
    double external_accel = 0.0;
    bool ignore_signals = false;  // controller owns stop-line behaviour

    // Fully externally driven pose (people mover).
    bool external_pose = false;
    double ext_vx = 0.0, ext_vy = 0.0;

    double y_prev = 0.0;  // for lateral velocity estimation
};

struct WorldStats {
    long spawned = 0;
    long exited = 0;
    long queued_peak = 0;
    long spawn_deferrals = 0;  // ticks an arrival stayed queued because entry was blocked
};

class World {
public:
    World(CorridorMap map, std::uint64_t seed, double dt = 0.1);

    double time() const { return tick_ * dt_; }
    double dt() const { return dt_; }
    long tick() const { return tick_; }
    const CorridorMap& map() const { return map_; }

    void set_demand(const DemandConfig& demand) { demand_ = demand; }
    void set_default_driver(const DriverParams& p) { default_driver_ = p; }
    void set_lane_change_duration(double seconds) { lane_change_duration_ = seconds; }
    void add_actor(const ScriptedActor& actor) { actors_.push_back(actor); }

    // Direct insertion (tests, presets with pre-placed traffic, the mover).
    int spawn(VehicleClass cls, double s, int lane, double v,
              const std::optional<DriverParams>& params = std::nullopt);

    // Advances the world by one tick: signals, accelerations, lane changes,
    // integration, exits, demand arrivals.
    void step();

    // Per-tick external longitudinal command; cleared after the step.
    void set_external_accel(int vehicle_id, double accel);
    void set_ignore_signals(int vehicle_id, bool ignore);

    // Externally integrated pose (kinematic puppet; still sensed and followed).
    void set_external_pose(int vehicle_id, double s, double y, double v, double vx, double vy);

    void request_priority(int signal_index) { priority_flags_[signal_index] = true; }
    void add_signal_shift(int signal_index, const ScheduledShift& shift);

    SignalState signal_state(int signal_index) const;
    const SignalRuntime& signal_runtime(int signal_index) const { return signals_[signal_index]; }
    int signal_count() const { return static_cast<int>(signals_.size()); }

    const std::vector<Vehicle>& vehicles() const { return vehicles_; }
    const Vehicle* find(int vehicle_id) const;

    // Ground-truth states of all road users (vehicles + active scripted actors)
    // at the current time. Kinematic (x, y) equals (s, y) in the road frame.
    std::vector<VehicleState> snapshot() const;

    // Planar kinematic view used by the sensing layer.
    struct GroundObject {
        int id = 0;
        VehicleClass cls = VehicleClass::Car;
        double x = 0.0, y = 0.0;
        double vx = 0.0, vy = 0.0;
        double length = 4.5, width = 1.8;
    };
    std::vector<GroundObject> ground_objects() const;

    int lane_of(const Vehicle& veh) const;
    double lateral_offset_of(const Vehicle& veh) const;

    const WorldStats& stats() const { return stats_; }
    long queued_now() const { return static_cast<long>(entry_queue_.size()); }
    const std::vector<ManeuverRecord>& maneuvers() const { return maneuvers_; }
    const std::vector<std::pair<int, double>>& exits() const { return exit_log_; }

    // Effective desired speed for a vehicle at its position (limit-bounded).
    double effective_desired_speed(const Vehicle& veh) const;

private:
    CorridorMap map_;
    double dt_;
    long tick_ = 0;
    DriverParams default_driver_;
    double lane_change_duration_ = 3.0;
    double lane_change_cooldown_ = 4.0;

    std::vector<Vehicle> vehicles_;
    std::vector<SignalRuntime> signals_;
    std::vector<bool> priority_flags_;
    std::vector<ScriptedActor> actors_;

    DemandConfig demand_;
    Rng demand_rng_;
    double next_arrival_ = -1.0;
    std::deque<VehicleClass> entry_queue_;
    int next_vehicle_id_ = 1;

    WorldStats stats_;
    std::vector<ManeuverRecord> maneuvers_;
    std::vector<std::pair<int, double>> exit_log_;

    bool occupies_lane(const Vehicle& veh, int lane) const;
    std::optional<LeaderView> leader_in_lane(const Vehicle& ego, int lane,
                                             const std::vector<const Vehicle*>& sorted) const;
    std::optional<LeaderView> follower_in_lane(const Vehicle& ego, int lane,
                                               const std::vector<const Vehicle*>& sorted) const;
    double signal_obstacle_accel(const Vehicle& veh, double v0_eff) const;
    void integrate(Vehicle& veh, double accel);
    void process_arrivals();
    void try_spawn_from_queue();
    void schedule_next_arrival();
};

}  // namespace csim::world
