#include "corridorsim/world/world.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"
#include "corridorsim/world/lane_change.hpp"

namespace csim::world {

namespace {
constexpr double kStopLineBuffer = 1.0;   // m kept clear before a stop line
constexpr double kDetectorZone = 40.0;    // m of approach covered by the stop-line detector
constexpr int kActorIdBase = 100000;
}  // namespace

World::World(CorridorMap map, std::uint64_t seed, double dt)
    : map_(std::move(map)), dt_(dt), demand_rng_(SeedBank(seed).stream("world/demand")) {
    if (dt_ <= 0.0) throw ConfigError("world dt must be positive");
    signals_.reserve(map_.signals.size());
    for (const auto& head : map_.signals) signals_.emplace_back(head);
    priority_flags_.assign(map_.signals.size(), false);
    default_driver_.validate();
}

int World::lane_of(const Vehicle& veh) const {
    const int n = map_.lanes_per_direction;
    int lane = static_cast<int>(std::floor(veh.y / map_.lane_width));
    return std::clamp(lane, 0, n - 1);
}

double World::lateral_offset_of(const Vehicle& veh) const {
    return veh.y - map_.lane_center_y(lane_of(veh));
}

bool World::occupies_lane(const Vehicle& veh, int lane) const {
    if (veh.changing) return lane == veh.lane_from || lane == veh.lane_to;
    return lane == lane_of(veh);
}

const Vehicle* World::find(int vehicle_id) const {
    for (const auto& v : vehicles_)
        if (v.id == vehicle_id) return &v;
    return nullptr;
}

double World::effective_desired_speed(const Vehicle& veh) const {
    const double here = map_.speed_limit_at(veh.s);
    const double brake_dist = veh.v * veh.v / (2.0 * veh.params.b_comf) + 5.0;
    const double ahead = map_.speed_limit_at(std::min(veh.s + brake_dist, map_.length));
    return veh.desired_speed_factor * std::min({here, ahead, veh.params.v0});
}

std::optional<LeaderView> World::leader_in_lane(const Vehicle& ego, int lane,
                                                const std::vector<const Vehicle*>& sorted) const {
    const Vehicle* best = nullptr;
    for (const Vehicle* other : sorted) {
        if (other->id == ego.id || !occupies_lane(*other, lane)) continue;
        if (other->s > ego.s && (!best || other->s < best->s)) best = other;
    }
    if (!best) return std::nullopt;
    return LeaderView{best->s, best->v, best->length};
}

std::optional<LeaderView> World::follower_in_lane(const Vehicle& ego, int lane,
                                                  const std::vector<const Vehicle*>& sorted) const {
    const Vehicle* best = nullptr;
    for (const Vehicle* other : sorted) {
        if (other->id == ego.id || !occupies_lane(*other, lane)) continue;
        if (other->s <= ego.s && (!best || other->s > best->s)) best = other;
    }
    if (!best) return std::nullopt;
    return LeaderView{best->s, best->v, best->length};
}

double World::signal_obstacle_accel(const Vehicle& veh, double v0_eff) const {
    double a_min = veh.params.a_max;
    bool limited = false;
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        const auto& head = map_.signals[i];
        const double front = veh.s + veh.length / 2.0;
        if (front >= head.s) continue;  // already at or past the line
        const SignalState st = signals_[i].state();
        if (st == SignalState::Green) continue;

        const double gap = head.s - front - kStopLineBuffer;
        if (st == SignalState::Amber) {
            // Continue through if stopping would demand more than b_safe.
            const double needed = veh.v * veh.v / (2.0 * std::max(gap, 0.5));
            if (needed > veh.params.b_safe) continue;
        }
        const double a =
            gap > 0.0 ? idm_accel_scalar(veh.v, v0_eff, gap, veh.v, veh.params) : -veh.params.b_emergency;
        a_min = std::min(a_min, a);
        limited = true;
    }
    return limited ? a_min : veh.params.a_max;
}

int World::spawn(VehicleClass cls, double s, int lane, double v,
                 const std::optional<DriverParams>& params) {
    Vehicle veh;
    veh.id = next_vehicle_id_++;
    veh.cls = cls;
    veh.params = params.value_or(default_driver_);
    veh.s = s;
    veh.y = map_.lane_center_y(lane);
    veh.y_prev = veh.y;
    veh.v = v;
    veh.length = default_length(cls);
    veh.width = default_width(cls);
    vehicles_.push_back(veh);
    stats_.spawned += 1;
    return veh.id;
}

void World::set_external_accel(int vehicle_id, double accel) {
    for (auto& v : vehicles_) {
        if (v.id == vehicle_id) {
            v.has_external_accel = true;
            v.external_accel = accel;
            return;
        }
    }
}

void World::set_ignore_signals(int vehicle_id, bool ignore) {
    for (auto& v : vehicles_) {
        if (v.id == vehicle_id) {
            v.ignore_signals = ignore;
            return;
        }
    }
}

void World::set_external_pose(int vehicle_id, double s, double y, double v, double vx, double vy) {
    for (auto& veh : vehicles_) {
        if (veh.id == vehicle_id) {
            veh.external_pose = true;
            veh.s = s;
            veh.y = y;
            veh.v = v;
            veh.ext_vx = vx;
            veh.ext_vy = vy;
            return;
        }
    }
}

SignalState World::signal_state(int signal_index) const {
    return signals_[static_cast<std::size_t>(signal_index)].state();
}

void World::add_signal_shift(int signal_index, const ScheduledShift& shift) {
    signals_[static_cast<std::size_t>(signal_index)].add_scheduled_shift(shift);
}

void World::integrate(Vehicle& veh, double accel) {
    // Ballistic update; clamps at standstill mid-tick instead of reversing.
    const double v_new = veh.v + accel * dt_;
    double advance;
    if (v_new < 0.0) {
        advance = accel != 0.0 ? -veh.v * veh.v / (2.0 * accel) : 0.0;
        veh.v = 0.0;
    } else {
        advance = veh.v * dt_ + 0.5 * accel * dt_ * dt_;
        veh.v = v_new;
    }
    veh.s += std::max(advance, 0.0);
    veh.a = accel;
}

void World::schedule_next_arrival() {
    if (demand_.rate <= 0.0) {
        next_arrival_ = -1.0;
        return;
    }
    std::exponential_distribution<double> gap(demand_.rate);
    next_arrival_ = (next_arrival_ < 0.0 ? time() : next_arrival_) + gap(demand_rng_);
}

void World::process_arrivals() {
    if (demand_.rate <= 0.0) return;
    if (next_arrival_ < 0.0) schedule_next_arrival();
    while (next_arrival_ >= 0.0 && next_arrival_ <= time()) {
        // Draw the class at arrival time so queueing never re-orders draws.
        double total = 0.0;
        for (const auto& [cls, w] : demand_.mix) total += w;
        std::uniform_real_distribution<double> u(0.0, total);
        double pick = u(demand_rng_);
        VehicleClass cls = demand_.mix.back().first;
        for (const auto& [c, w] : demand_.mix) {
            if (pick < w) {
                cls = c;
                break;
            }
            pick -= w;
        }
        entry_queue_.push_back(cls);
        schedule_next_arrival();
    }
    stats_.queued_peak = std::max(stats_.queued_peak, static_cast<long>(entry_queue_.size()));
}

void World::try_spawn_from_queue() {
    while (!entry_queue_.empty()) {
        const VehicleClass cls = entry_queue_.front();
        const double len = default_length(cls);
        const double entry_s = len / 2.0 + 0.5;
        const double v_entry = demand_.entry_speed_factor * map_.speed_limit_at(0.0);

        // Pick the lane with the largest entry gap; FIFO vehicles never overtake in the queue.
        int best_lane = -1;
        double best_gap = -1.0;
        for (int lane = 0; lane < map_.lanes_per_direction; ++lane) {
            double gap = 1e18;
            for (const auto& other : vehicles_) {
                if (!occupies_lane(other, lane)) continue;
                const double g = bumper_gap(other.s, other.length, entry_s, len);
                if (other.s + other.length / 2.0 > 0.0) gap = std::min(gap, g);
            }
            if (gap > best_gap) {
                best_gap = gap;
                best_lane = lane;
            }
        }
        const double needed = default_driver_.s0 + v_entry * default_driver_.T;
        if (best_lane < 0 || best_gap < needed) {
            stats_.spawn_deferrals += 1;
            return;  // blocked; keep the arrival queued
        }
        spawn(cls, entry_s, best_lane, v_entry);

        // Mild driver heterogeneity; trucks run slower with longer headways.
        Vehicle& veh = vehicles_.back();
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);
        if (cls == VehicleClass::Truck) {
            veh.desired_speed_factor = 0.82 + jitter(demand_rng_);
            veh.params.T = 1.8;
        } else {
            veh.desired_speed_factor = 1.0 + jitter(demand_rng_);
        }
        entry_queue_.pop_front();
    }
}

void World::step() {
    const double t_now = time();

    // 1. Signals.
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        bool occupancy = false;
        const double head_s = map_.signals[i].s;
        for (const auto& veh : vehicles_) {
            if (veh.s >= head_s - kDetectorZone && veh.s <= head_s) {
                occupancy = true;
                break;
            }
        }
        signals_[i].update(t_now, occupancy, priority_flags_[i]);
        priority_flags_[i] = false;
    }

    // 2. Per-lane sorted views of the pre-step state.
    std::vector<const Vehicle*> sorted;
    sorted.reserve(vehicles_.size());
    for (const auto& v : vehicles_) sorted.push_back(&v);
    std::sort(sorted.begin(), sorted.end(),
              [](const Vehicle* a, const Vehicle* b) { return a->s < b->s; });

    // 3. Accelerations from the snapshot (synchronous update).
    std::vector<double> accel(vehicles_.size(), 0.0);
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
        Vehicle& veh = vehicles_[i];
        if (veh.external_pose) continue;
        const double v0_eff = effective_desired_speed(veh);
        DriverParams p = veh.params;
        p.v0 = v0_eff;

        double a = p.a_max;
        const int primary = lane_of(veh);
        for (int lane : {veh.changing ? veh.lane_from : primary, veh.changing ? veh.lane_to : primary}) {
            auto leader = leader_in_lane(veh, lane, sorted);
            double a_lane;
            if (leader && bumper_gap(leader->s, leader->length, veh.s, veh.length) <= 0.0) {
                a_lane = -p.b_emergency;  // emergency: overlap imminent
            } else {
                VehicleState ego;
                ego.id = veh.id;
                ego.s = veh.s;
                ego.v = veh.v;
                ego.length = veh.length;
                a_lane = idm_accel(ego, leader, p);
            }
            a = std::min(a, a_lane);
            if (!veh.changing) break;
        }

        if (!veh.ignore_signals) a = std::min(a, signal_obstacle_accel(veh, v0_eff));

        if (veh.has_external_accel) {
            // Controller command, still bounded by car-following safety.
            a = std::min(a, std::max(veh.external_accel, -p.b_emergency));
        }
        accel[i] = std::clamp(a, -p.b_emergency, p.a_max);
    }

    // 4. Lane-change decisions (committed in id order; safety re-checked
    //    against commitments made earlier in this tick).
    if (map_.lanes_per_direction > 1) {
        for (auto& veh : vehicles_) {
            if (veh.external_pose || veh.changing) continue;
            if (t_now - veh.last_change_end < lane_change_cooldown_) continue;
            const int lane = lane_of(veh);
            DriverParams p = veh.params;
            p.v0 = effective_desired_speed(veh);

            MobilInput input;
            input.current.exists = true;
            input.current.leader = leader_in_lane(veh, lane, sorted);
            input.current.follower = follower_in_lane(veh, lane, sorted);
            if (lane + 1 < map_.lanes_per_direction) {
                input.left.exists = true;
                input.left.leader = leader_in_lane(veh, lane + 1, sorted);
                input.left.follower = follower_in_lane(veh, lane + 1, sorted);
            }
            if (lane - 1 >= 0) {
                input.right.exists = true;
                input.right.leader = leader_in_lane(veh, lane - 1, sorted);
                input.right.follower = follower_in_lane(veh, lane - 1, sorted);
            }
            VehicleState ego;
            ego.id = veh.id;
            ego.s = veh.s;
            ego.v = veh.v;
            ego.length = veh.length;
            const LaneChangeDecision decision = mobil_decide(ego, input, p);
            if (decision == LaneChangeDecision::Stay) continue;

            const int target = lane + (decision == LaneChangeDecision::ChangeLeft ? 1 : -1);
            // Re-check the slot against vehicles already committed this tick
            // (occupies_lane sees their updated maneuver state).
            bool blocked = false;
            for (const auto& other : vehicles_) {
                if (other.id == veh.id || !other.changing || !occupies_lane(other, target)) continue;
                const double clearance = std::abs(other.s - veh.s) -
                                         0.5 * (other.length + veh.length);
                if (clearance < p.s0) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;

            veh.changing = true;
            veh.lane_from = lane;
            veh.lane_to = target;
            veh.lc_t0 = t_now;
            veh.lc_duration = lane_change_duration_;
            veh.lc_y0 = veh.y;
            veh.lc_y1 = map_.lane_center_y(target);
            maneuvers_.push_back({veh.id, lane, target, t_now, 0.0, false});
        }
    }

    // 5. Integrate longitudinal and lateral motion.
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
        Vehicle& veh = vehicles_[i];
        veh.y_prev = veh.y;
        if (veh.external_pose) continue;
        integrate(veh, accel[i]);
        if (veh.changing) {
            const double t_in = (t_now + dt_) - veh.lc_t0;
            if (t_in >= veh.lc_duration) {
                veh.y = veh.lc_y1;
                veh.changing = false;
                veh.last_change_end = t_now + dt_;
                for (auto it = maneuvers_.rbegin(); it != maneuvers_.rend(); ++it) {
                    if (it->vehicle_id == veh.id && !it->completed) {
                        it->t_end = t_now + dt_;
                        it->completed = true;
                        break;
                    }
                }
            } else {
                veh.y = lane_change_lat_at(veh.lc_y0, veh.lc_y1, veh.lc_duration, t_in);
            }
        }
    }

    // 6. Exits.
    for (auto it = vehicles_.begin(); it != vehicles_.end();) {
        if (it->s - it->length / 2.0 > map_.length) {
            exit_log_.emplace_back(it->id, t_now + dt_);
            stats_.exited += 1;
            it = vehicles_.erase(it);
        } else {
            ++it;
        }
    }

    tick_ += 1;

    // 7. Demand arrivals at the new time.
    process_arrivals();
    try_spawn_from_queue();

    // External accel commands are one-shot.
    for (auto& veh : vehicles_) veh.has_external_accel = false;
}

std::vector<World::GroundObject> World::ground_objects() const {
    std::vector<GroundObject> out;
    out.reserve(vehicles_.size() + actors_.size());
    const double t_now = time();
    for (const auto& veh : vehicles_) {
        GroundObject g;
        g.id = veh.id;
        g.cls = veh.cls;
        g.x = veh.s;
        g.y = veh.y;
        if (veh.external_pose) {
            g.vx = veh.ext_vx;
            g.vy = veh.ext_vy;
        } else {
            g.vx = veh.v;
            g.vy = tick_ > 0 ? (veh.y - veh.y_prev) / dt_ : 0.0;
        }
        g.length = veh.length;
        g.width = veh.width;
        out.push_back(g);
    }
    for (const auto& actor : actors_) {
        if (t_now < actor.t_start || t_now > actor.t_end) continue;
        GroundObject g;
        g.id = kActorIdBase + actor.id;
        g.cls = actor.cls;
        g.x = actor.x0 + actor.vx * (t_now - actor.t_start);
        g.y = actor.y0 + actor.vy * (t_now - actor.t_start);
        g.vx = actor.vx;
        g.vy = actor.vy;
        g.length = default_length(actor.cls);
        g.width = default_width(actor.cls);
        out.push_back(g);
    }
    return out;
}

std::vector<VehicleState> World::snapshot() const {
    std::vector<VehicleState> out;
    out.reserve(vehicles_.size() + actors_.size());
    const double t_now = time();
    for (const auto& veh : vehicles_) {
        VehicleState st;
        st.id = veh.id;
        st.cls = veh.cls;
        st.s = veh.s;
        st.lane = lane_of(veh);
        st.lat = lateral_offset_of(veh);
        st.v = veh.v;
        st.a = veh.a;
        st.length = veh.length;
        st.width = veh.width;
        st.t = t_now;
        out.push_back(st);
    }
    for (const auto& actor : actors_) {
        if (t_now < actor.t_start || t_now > actor.t_end) continue;
        VehicleState st;
        st.id = kActorIdBase + actor.id;
        st.cls = actor.cls;
        st.s = actor.x0 + actor.vx * (t_now - actor.t_start);
        const double y = actor.y0 + actor.vy * (t_now - actor.t_start);
        st.lane = std::clamp(static_cast<int>(std::floor(y / map_.lane_width)), 0,
                             map_.lanes_per_direction - 1);
        st.lat = y - map_.lane_center_y(st.lane);
        st.v = std::hypot(actor.vx, actor.vy);
        st.length = default_length(actor.cls);
        st.width = default_width(actor.cls);
        st.t = t_now;
        out.push_back(st);
    }
    return out;
}

}  // namespace csim::world
