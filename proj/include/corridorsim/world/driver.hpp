#pragma once

#include <optional>

#include "corridorsim/world/types.hpp"

namespace csim::world {

// Minimal kinematic view of a neighbour for car-following decisions.
struct LeaderView {
    double s = 0.0;       // m, centre position
    double v = 0.0;       // m/s
    double length = 0.0;  // m
};

// Bumper-to-bumper gap between follower and leader centres.
inline double bumper_gap(double s_leader, double len_leader, double s_follower, double len_follower) {
    return (s_leader - s_follower) - 0.5 * (len_leader + len_follower);
}

// Intelligent-driver car-following acceleration. Free flow when no leader.
// Bounded to [-b_emergency, a_max]. Throws CollisionStateError on gap <= 0.
double idm_accel(const VehicleState& ego, const std::optional<LeaderView>& leader,
                 const DriverParams& params);

// Same law expressed on scalar inputs; used by controllers that track a
// virtual obstacle (stop line, planned stop point).
double idm_accel_scalar(double v, double v0, double gap, double delta_v, const DriverParams& params);

enum class LaneChangeDecision : std::uint8_t { Stay = 0, ChangeLeft = 1, ChangeRight = 2 };

// Neighbourhood of the ego on one candidate lane.
struct LaneContext {
    bool exists = false;
    std::optional<LeaderView> leader;    // nearest vehicle ahead in that lane
    std::optional<LeaderView> follower;  // nearest vehicle behind in that lane
};

struct MobilInput {
    LaneContext current;  // ego's own lane (leader/follower around ego)
    LaneContext left;
    LaneContext right;
};

// Incentive-plus-safety lane-change decision. The executed change always
// satisfies: induced deceleration of the target-lane follower <= b_safe.
LaneChangeDecision mobil_decide(const VehicleState& ego, const MobilInput& neighbors,
                                const DriverParams& params);

}  // namespace csim::world
