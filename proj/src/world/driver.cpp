#include "corridorsim/world/driver.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::world {

namespace {
constexpr double kAccelExponent = 4.0;

double free_flow_term(double v, double v0, double a_max) {
    if (v0 <= 0) return -1.0;
    return a_max * (1.0 - std::pow(v / v0, kAccelExponent));
}
}  // namespace

double idm_accel_scalar(double v, double v0, double gap, double delta_v, const DriverParams& p) {
    if (gap <= 0.0) throw CollisionStateError("non-positive gap to leader");
    const double s_star =
        p.s0 + std::max(0.0, v * p.T + v * delta_v / (2.0 * std::sqrt(p.a_max * p.b_comf)));
    const double a = free_flow_term(v, v0, p.a_max) - p.a_max * (s_star / gap) * (s_star / gap);
    return std::clamp(a, -p.b_emergency, p.a_max);
}

double idm_accel(const VehicleState& ego, const std::optional<LeaderView>& leader,
                 const DriverParams& p) {
    if (!leader) {
        const double a = free_flow_term(ego.v, p.v0, p.a_max);
        return std::clamp(a, -p.b_emergency, p.a_max);
    }
    const double gap = bumper_gap(leader->s, leader->length, ego.s, ego.length);
    return idm_accel_scalar(ego.v, p.v0, gap, ego.v - leader->v, p);
}

namespace {

// Acceleration of `who` following `leader`, with collisions mapped to a hard
// braking value so degenerate candidate configurations are rejected, not thrown.
double accel_or_brake(double v, double v0, const std::optional<LeaderView>& leader, double s,
                      double length, const DriverParams& p) {
    if (!leader) return std::clamp(p.a_max * (1.0 - std::pow(v / v0, 4.0)), -p.b_emergency, p.a_max);
    const double gap = bumper_gap(leader->s, leader->length, s, length);
    if (gap <= 0.0) return -p.b_emergency;
    return idm_accel_scalar(v, v0, gap, v - leader->v, p);
}

struct SideEvaluation {
    bool safe = false;
    double incentive = 0.0;
};

SideEvaluation evaluate_side(const VehicleState& ego, const LaneContext& target,
                             const LaneContext& current, const DriverParams& p) {
    SideEvaluation out;
    if (!target.exists) return out;

    // Hard feasibility: target slot must have positive gaps both ways.
    if (target.leader) {
        if (bumper_gap(target.leader->s, target.leader->length, ego.s, ego.length) <= 0.0) return out;
    }
    if (target.follower) {
        if (bumper_gap(ego.s, ego.length, target.follower->s, target.follower->length) <= 0.0)
            return out;
    }

    const double a_ego_now = accel_or_brake(ego.v, p.v0, current.leader, ego.s, ego.length, p);
    const double a_ego_new = accel_or_brake(ego.v, p.v0, target.leader, ego.s, ego.length, p);

    // Safety criterion: deceleration induced on the new follower.
    double a_newfollower_new = 0.0;
    double a_newfollower_now = 0.0;
    if (target.follower) {
        const LeaderView ego_as_leader{ego.s, ego.v, ego.length};
        a_newfollower_new =
            accel_or_brake(target.follower->v, p.v0, ego_as_leader, target.follower->s,
                           target.follower->length, p);
        a_newfollower_now = accel_or_brake(target.follower->v, p.v0, target.leader,
                                           target.follower->s, target.follower->length, p);
        if (a_newfollower_new < -p.b_safe) return out;  // would impose too much braking
    }

    // Old follower is relieved: it inherits ego's current leader.
    double a_oldfollower_new = 0.0;
    double a_oldfollower_now = 0.0;
    if (current.follower) {
        const LeaderView ego_as_leader{ego.s, ego.v, ego.length};
        a_oldfollower_now = accel_or_brake(current.follower->v, p.v0, ego_as_leader,
                                           current.follower->s, current.follower->length, p);
        a_oldfollower_new = accel_or_brake(current.follower->v, p.v0, current.leader,
                                           current.follower->s, current.follower->length, p);
    }

    out.safe = true;
    out.incentive = (a_ego_new - a_ego_now) +
                    p.politeness * ((a_newfollower_new - a_newfollower_now) +
                                    (a_oldfollower_new - a_oldfollower_now));
    return out;
}

}  // namespace

LaneChangeDecision mobil_decide(const VehicleState& ego, const MobilInput& n,
                                const DriverParams& p) {
    const SideEvaluation left = evaluate_side(ego, n.left, n.current, p);
    const SideEvaluation right = evaluate_side(ego, n.right, n.current, p);

    const bool left_ok = left.safe && left.incentive > p.delta_a_th;
    const bool right_ok = right.safe && right.incentive > p.delta_a_th;

    if (left_ok && right_ok)
        return left.incentive >= right.incentive ? LaneChangeDecision::ChangeLeft
                                                 : LaneChangeDecision::ChangeRight;
    if (left_ok) return LaneChangeDecision::ChangeLeft;
    if (right_ok) return LaneChangeDecision::ChangeRight;
    return LaneChangeDecision::Stay;
}

}  // namespace csim::world
