#include <doctest.h>

#include <cmath>
#include <numeric>

#include "corridorsim/common/error.hpp"
#include "corridorsim/world/corridor.hpp"
#include "corridorsim/world/driver.hpp"
#include "corridorsim/world/lane_change.hpp"
#include "corridorsim/world/signal.hpp"
#include "corridorsim/world/world.hpp"

using namespace csim;
using namespace csim::world;

namespace {

CorridorSpec urban_spec(double length = 1000.0, int lanes = 1, double limit = 13.89) {
    CorridorSpec spec;
    spec.length = length;
    spec.lanes_per_direction = lanes;
    spec.segments = {{0.0, length, SegmentKind::Urban, limit}};
    return spec;
}

DriverParams default_params(double v0 = 13.89) {
    DriverParams p;
    p.v0 = v0;
    return p;
}

}  // namespace

TEST_CASE("build_corridor validates presets") {
    auto map = build_corridor(urban_spec());
    CHECK(map.length == doctest::Approx(1000.0));
    CHECK(map.segments.size() == 1);
    CHECK(map.segments[0].speed_limit == doctest::Approx(13.89));

    CorridorSpec rural = urban_spec(2000.0, 2, 19.44);
    rural.segments = {{0.0, 2000.0, SegmentKind::Rural, 19.44}};
    CHECK(build_corridor(rural).speed_limit_at(100.0) == doctest::Approx(19.44));

    CorridorSpec empty;
    empty.length = 500.0;
    CHECK_THROWS_AS(build_corridor(empty), ConfigError);

    CorridorSpec overlapping = urban_spec();
    overlapping.segments = {{0.0, 600.0, SegmentKind::Urban, 13.89},
                            {500.0, 1000.0, SegmentKind::Urban, 13.89}};
    CHECK_THROWS_AS(build_corridor(overlapping), ConfigError);

    CorridorSpec gapped = urban_spec();
    gapped.segments = {{0.0, 400.0, SegmentKind::Urban, 13.89},
                       {500.0, 1000.0, SegmentKind::Urban, 13.89}};
    CHECK_THROWS_AS(build_corridor(gapped), ConfigError);
}

TEST_CASE("idm free flow equilibria") {
    DriverParams p = default_params();
    VehicleState ego;
    ego.v = p.v0;
    CHECK(idm_accel(ego, std::nullopt, p) == doctest::Approx(0.0).epsilon(1e-12));

    ego.v = 0.0;
    CHECK(idm_accel(ego, std::nullopt, p) == doctest::Approx(p.a_max));
}

TEST_CASE("idm equilibrium gap from closed-form oracle") {
    DriverParams p = default_params();
    const double v = 10.0;
    // Equilibrium condition of the model: a = 0 at gap s_eq with zero closing
    // speed; solved independently here.
    const double s_star = p.s0 + v * p.T;
    const double s_eq = s_star / std::sqrt(1.0 - std::pow(v / p.v0, 4.0));

    VehicleState ego;
    ego.v = v;
    ego.s = 0.0;
    ego.length = 4.5;
    LeaderView leader{s_eq + ego.length, v, 4.5};  // bumper gap exactly s_eq
    const double a = idm_accel(ego, leader, p);
    CHECK(std::abs(a) < 1e-6);
}

TEST_CASE("idm rejects collision states") {
    DriverParams p = default_params();
    VehicleState ego;
    ego.v = 5.0;
    ego.s = 0.0;
    ego.length = 4.5;
    LeaderView touching{4.0, 5.0, 4.5};  // bumper overlap
    CHECK_THROWS_AS(idm_accel(ego, touching, p), CollisionStateError);
}

TEST_CASE("idm output bounded") {
    DriverParams p = default_params();
    VehicleState ego;
    ego.v = 13.0;
    ego.s = 0.0;
    LeaderView wall{ego.s + 5.0, 0.0, 0.1};
    const double a = idm_accel(ego, wall, p);
    CHECK(a >= -p.b_emergency);
    CHECK(a <= p.a_max);
}

TEST_CASE("mobil incentive and safety criteria") {
    DriverParams p = default_params();
    p.politeness = 0.0;
    p.delta_a_th = 0.2;

    VehicleState ego;
    ego.id = 1;
    ego.s = 100.0;
    ego.v = 10.0;
    ego.length = 4.5;

    SUBCASE("clear gain with empty target lane -> change") {
        MobilInput n;
        n.current.exists = true;
        n.current.leader = LeaderView{112.0, 4.0, 4.5};  // slow close leader
        n.left.exists = true;  // empty fast lane

        // Oracle: plug the incentive inequality by hand using the public model.
        const double a_now = idm_accel(ego, n.current.leader, p);
        const double a_new = idm_accel(ego, std::nullopt, p);
        REQUIRE(a_new - a_now > p.delta_a_th + 0.3);  // comfortably above threshold
        CHECK(mobil_decide(ego, n, p) == LaneChangeDecision::ChangeLeft);
    }

    SUBCASE("new follower forced past b_safe -> stay") {
        MobilInput n;
        n.current.exists = true;
        n.current.leader = LeaderView{112.0, 4.0, 4.5};
        n.left.exists = true;
        n.left.follower = LeaderView{93.0, 13.8, 4.5};  // fast and close behind the slot

        VehicleState follower;
        follower.s = 93.0;
        follower.v = 13.8;
        follower.length = 4.5;
        const double induced = idm_accel(follower, LeaderView{ego.s, ego.v, ego.length}, p);
        REQUIRE(induced < -p.b_safe);  // oracle: the slot is unsafe
        CHECK(mobil_decide(ego, n, p) == LaneChangeDecision::Stay);
    }

    SUBCASE("no adjacent lane -> stay") {
        MobilInput n;
        n.current.exists = true;
        CHECK(mobil_decide(ego, n, p) == LaneChangeDecision::Stay);
    }
}

TEST_CASE("lane change execution follows the quintic profile") {
    const double y0 = 1.75, y1 = 5.25, T = 3.0;

    auto samples = lane_change_execute(y0, y1, T, 10.0);
    CHECK(samples.size() == 31);  // 30 steps + start
    CHECK(samples.front().lat == y0);
    CHECK(samples.back().lat == y1);

    // Monotone progress.
    for (std::size_t i = 1; i < samples.size(); ++i) CHECK(samples[i].lat >= samples[i - 1].lat);

    // Independent closed-form quintic oracle.
    auto oracle = [&](double t) {
        const double tau = t / T;
        return y0 + (y1 - y0) * (10.0 * std::pow(tau, 3) - 15.0 * std::pow(tau, 4) +
                                 6.0 * std::pow(tau, 5));
    };
    for (const auto& s : samples) CHECK(s.lat == doctest::Approx(oracle(s.t)).epsilon(1e-9));

    CHECK_THROWS_AS(lane_change_execute(y0, y1, 0.0, 10.0), InvalidDuration);
}

TEST_CASE("fixed signal plan is periodic modulo arithmetic") {
    FixedPlan plan;
    plan.cycle = {{SignalState::Green, 30.0}, {SignalState::Red, 30.0}};
    CHECK(SignalRuntime::fixed_state_at(plan, 45.0) == SignalState::Red);
    CHECK(SignalRuntime::fixed_state_at(plan, 15.0) == SignalState::Green);

    // state(t) == state(t + cycle) for sampled t.
    for (double t = 0.0; t < 60.0; t += 0.7)
        CHECK(SignalRuntime::fixed_state_at(plan, t) == SignalRuntime::fixed_state_at(plan, t + 60.0));
}

TEST_CASE("actuated signal gap-out trace") {
    SignalHead head;
    head.id = 1;
    head.s = 100.0;
    head.has_fixed = false;
    head.actuated = {8.0, 40.0, 3.0, 3.0, 15.0};

    SignalRuntime rt(head);
    // Occupancy until t=2, then empty: expect green end at max(min_green, 2+gap_out) = 8.
    double green_end = -1.0;
    for (double t = 0.0; t <= 20.0; t += 0.1) {
        const SignalState st = rt.update(t, t <= 2.0, false);
        if (st != SignalState::Green && green_end < 0.0) green_end = t;
    }
    CHECK(green_end == doctest::Approx(8.0).epsilon(0.02));

    // With sustained occupancy the phase runs to max_green.
    SignalRuntime rt2(head);
    green_end = -1.0;
    for (double t = 0.0; t <= 60.0; t += 0.1) {
        const SignalState st = rt2.update(t, true, false);
        if (st != SignalState::Green && green_end < 0.0) green_end = t;
    }
    CHECK(green_end == doctest::Approx(40.0).epsilon(0.01));
}

TEST_CASE("priority request forces green within max_green") {
    SignalHead head;
    head.has_fixed = false;
    head.priority_request_hook = true;
    head.actuated = {8.0, 40.0, 3.0, 3.0, 30.0};

    SignalRuntime rt(head);
    double t = 0.0;
    // Run until red.
    while (rt.state() != SignalState::Red && t < 100.0) {
        rt.update(t, false, false);
        t += 0.1;
    }
    const double t0 = t;
    double green_at = -1.0;
    while (t < t0 + head.actuated.max_green + 1.0) {
        if (rt.update(t, false, true) == SignalState::Green) {
            green_at = t;
            break;
        }
        t += 0.1;
    }
    REQUIRE(green_at >= 0.0);
    CHECK(green_at - t0 <= head.actuated.max_green);
}

TEST_CASE("world: empty step advances clock only") {
    World w(build_corridor(urban_spec()), 7);
    w.step();
    CHECK(w.time() == doctest::Approx(0.1));
    CHECK(w.vehicles().empty());
}

TEST_CASE("world: free vehicle at desired speed advances linearly") {
    World w(build_corridor(urban_spec()), 7);
    const int id = w.spawn(VehicleClass::Car, 50.0, 0, 13.89);
    for (int i = 0; i < 100; ++i) w.step();
    const Vehicle* veh = w.find(id);
    REQUIRE(veh != nullptr);
    // Closed-form kinematics: v stays at v0, so s = s0 + v * t.
    CHECK(veh->s == doctest::Approx(50.0 + 13.89 * 10.0).epsilon(1e-6));
    CHECK(veh->v == doctest::Approx(13.89).epsilon(1e-9));
}

TEST_CASE("world: follower never collides with braking leader (fine-step oracle)") {
    // Reference: integrate the same car-following law at dt = 1 ms.
    DriverParams p = default_params();
    double s_l = 80.0, v_l = 13.89;
    double s_f = 30.0, v_f = 13.89;
    const double lead_brake = -2.5;
    double min_gap_ref = 1e18;
    for (double t = 0.0; t < 60.0; t += 0.001) {
        const double a_l = (t < 5.0 && v_l > 0.0) ? lead_brake : 0.0;
        VehicleState ego;
        ego.v = v_f;
        ego.s = s_f;
        ego.length = 4.5;
        const double a_f = idm_accel(ego, LeaderView{s_l, v_l, 4.5}, p);
        v_l = std::max(0.0, v_l + a_l * 0.001);
        s_l += v_l * 0.001;
        v_f = std::max(0.0, v_f + a_f * 0.001);
        s_f += v_f * 0.001;
        min_gap_ref = std::min(min_gap_ref, s_l - s_f - 4.5);
    }
    REQUIRE(min_gap_ref > 0.0);

    // Simulation at dt = 0.1 must match the qualitative outcome.
    World w(build_corridor(urban_spec()), 7);
    const int leader = w.spawn(VehicleClass::Car, 80.0, 0, 13.89);
    const int follower = w.spawn(VehicleClass::Car, 30.0, 0, 13.89);
    double min_gap = 1e18;
    bool follower_decelerated = false;
    for (int i = 0; i < 600; ++i) {
        if (w.time() < 5.0) {
            const Vehicle* lv = w.find(leader);
            if (lv && lv->v > 0.0) w.set_external_accel(leader, lead_brake);
        }
        w.step();
        const Vehicle* lv = w.find(leader);
        const Vehicle* fv = w.find(follower);
        if (!lv || !fv) break;
        min_gap = std::min(min_gap, lv->s - fv->s - 4.5);
        if (fv->a < -0.1) follower_decelerated = true;
    }
    CHECK(min_gap > 0.0);
    CHECK(follower_decelerated);
}

TEST_CASE("world: demand spawning statistics and blocking") {
    SUBCASE("rate zero spawns nothing") {
        World w(build_corridor(urban_spec()), 3);
        DemandConfig d;
        d.rate = 0.0;
        w.set_demand(d);
        for (int i = 0; i < 1000; ++i) w.step();
        CHECK(w.stats().spawned == 0);
    }

    SUBCASE("poisson arrivals match rate within 3 sigma across seeds") {
        // Oracle: Poisson(rate * T) mean 120, sd ~10.95.
        long total = 0;
        const int seeds = 8;
        for (int seed = 1; seed <= seeds; ++seed) {
            World w(build_corridor(urban_spec(4000.0, 2)), seed);
            DemandConfig d;
            d.rate = 0.2;
            w.set_demand(d);
            for (int i = 0; i < 6000; ++i) w.step();
            total += w.stats().spawned + w.queued_now();
        }
        const double mean = static_cast<double>(total) / seeds;
        CHECK(mean > 120.0 - 3.0 * std::sqrt(120.0 / seeds));
        CHECK(mean < 120.0 + 3.0 * std::sqrt(120.0 / seeds));
    }

    SUBCASE("blocked entry defers but never drops") {
        World w(build_corridor(urban_spec(200.0, 1)), 3);
        // Park a stopped vehicle on the entry.
        DriverParams parked = default_params();
        parked.v0 = 0.01;
        w.spawn(VehicleClass::Car, 3.0, 0, 0.0, parked);
        DemandConfig d;
        d.rate = 1.0;
        w.set_demand(d);
        for (int i = 0; i < 300; ++i) w.step();
        CHECK(w.queued_now() > 0);
        CHECK(w.stats().spawn_deferrals > 0);
        // Conservation: arrivals = spawned + still queued.
        CHECK(w.stats().spawned + w.queued_now() > 0);
    }
}

TEST_CASE("world: conservation every tick") {
    World w(build_corridor(urban_spec()), 11);
    DemandConfig d;
    d.rate = 0.3;
    w.set_demand(d);
    for (int i = 0; i < 3000; ++i) {
        w.step();
        CHECK(static_cast<long>(w.vehicles().size()) == w.stats().spawned - w.stats().exited);
    }
    CHECK(w.stats().spawned > 0);
    CHECK(w.stats().exited > 0);
}

TEST_CASE("world: determinism, identical seed gives identical trajectories") {
    auto run = [](std::uint64_t seed) {
        World w(build_corridor(urban_spec()), seed);
        DemandConfig d;
        d.rate = 0.25;
        w.set_demand(d);
        std::vector<double> trace;
        for (int i = 0; i < 2000; ++i) {
            w.step();
            for (const auto& v : w.vehicles()) {
                trace.push_back(v.s);
                trace.push_back(v.v);
            }
        }
        return trace;
    };
    const auto a = run(42), b = run(42), c = run(43);
    CHECK(a == b);       // bit identical
    CHECK(a != c);       // seed actually matters
}

TEST_CASE("world: collision freedom and signal stops over 600 s urban run") {
    CorridorSpec spec = urban_spec();
    SignalHead head;
    head.id = 0;
    head.s = 360.0;
    head.fixed.cycle = {{SignalState::Green, 27.0}, {SignalState::Amber, 3.0},
                        {SignalState::Red, 30.0}};
    spec.signals.push_back(head);

    World w(build_corridor(spec), 5);
    DemandConfig d;
    d.rate = 0.18;
    w.set_demand(d);

    double min_gap = 1e18;
    bool crossed_red = false;
    for (int i = 0; i < 6000; ++i) {
        w.step();
        // Same-lane gap check every tick.
        std::vector<const Vehicle*> in_lane;
        for (const auto& v : w.vehicles()) in_lane.push_back(&v);
        std::sort(in_lane.begin(), in_lane.end(),
                  [](const Vehicle* a, const Vehicle* b) { return a->s < b->s; });
        for (std::size_t k = 1; k < in_lane.size(); ++k) {
            const double gap =
                in_lane[k]->s - in_lane[k - 1]->s - 0.5 * (in_lane[k]->length + in_lane[k - 1]->length);
            min_gap = std::min(min_gap, gap);
        }
        // No vehicle front crosses the line during red with room to spare.
        if (w.signal_state(0) == SignalState::Red) {
            for (const auto& v : w.vehicles()) {
                const double front = v.s + v.length / 2.0;
                const double prev_front = front - v.v * w.dt() - 0.1;
                if (prev_front < head.s && front > head.s && v.v > 0.5) crossed_red = true;
            }
        }
    }
    CHECK(min_gap > 0.0);
    CHECK(!crossed_red);
    CHECK(w.stats().exited > 50);
}

TEST_CASE("world: mobil safety holds at decision time in traffic") {
    CorridorSpec spec = urban_spec(2000.0, 2, 19.44);
    spec.segments = {{0.0, 2000.0, SegmentKind::Rural, 19.44}};
    World w(build_corridor(spec), 9);
    DemandConfig d;
    d.rate = 0.35;
    d.mix = {{VehicleClass::Car, 0.8}, {VehicleClass::Truck, 0.2}};
    w.set_demand(d);

    DriverParams p = default_params(19.44);
    std::size_t checked = 0;
    std::size_t seen = 0;
    for (int i = 0; i < 6000; ++i) {
        const auto pre = w.vehicles();  // decision-time state
        const double t_pre = w.time();
        w.step();
        for (const auto& m : w.maneuvers()) {
            if (m.t_start != t_pre) continue;
            ++seen;
            // Find the new follower in the target lane at decision time.
            const Vehicle* ego = nullptr;
            const Vehicle* follower = nullptr;
            for (const auto& v : pre) {
                if (v.id == m.vehicle_id) ego = &v;
            }
            REQUIRE(ego != nullptr);
            for (const auto& v : pre) {
                if (v.id == ego->id || v.changing) continue;
                const int lane = static_cast<int>(std::floor(v.y / 3.5));
                if (lane != m.to_lane || v.s > ego->s) continue;
                if (!follower || v.s > follower->s) follower = &v;
            }
            if (!follower) continue;
            VehicleState f;
            f.v = follower->v;
            f.s = follower->s;
            f.length = follower->length;
            const double induced =
                idm_accel(f, LeaderView{ego->s, ego->v, ego->length}, p);
            CHECK(induced >= -p.b_safe - 1e-9);
            ++checked;
        }
    }
    INFO("lane changes observed: " << seen << ", with follower: " << checked);
    CHECK(seen > 5);  // the scenario actually produces lane changes
}
