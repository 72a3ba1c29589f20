#pragma once

#include <utility>
#include <vector>

#include "corridorsim/world/types.hpp"

namespace csim::world {

// One future green-start shift, applied when the clock reaches t_apply.
// Used to exercise forecast-shock handling: the upcoming red->green
// transition moves by delta seconds (green end stays put).
struct ScheduledShift {
    double t_apply = 0.0;
    double delta = 0.0;  // s, positive delays the green start
};

struct PhaseWindow {
    SignalState state = SignalState::Red;
    double start = 0.0;  // s, absolute
    double end = 0.0;    // s, absolute
};

// Runtime state machine for one signal head. Fixed plans are periodic in the
// absence of shifts/priority; actuated plans run min/max green with gap-out.
class SignalRuntime {
public:
    SignalRuntime() = default;
    explicit SignalRuntime(const SignalHead& head);

    // Advances to time t (monotone calls) and returns the state shown.
    SignalState update(double t, bool detector_occupancy, bool priority_request);

    SignalState state() const { return state_; }
    const SignalHead& head() const { return head_; }

    // Future phase windows from time t over `horizon` seconds, reflecting any
    // already-applied shifts and the pending shift schedule.
    std::vector<PhaseWindow> schedule(double t, double horizon) const;

    void add_scheduled_shift(const ScheduledShift& shift) { shifts_.push_back(shift); }

    // Pure periodic lookup for a fixed plan; ignores shifts and priority.
    static SignalState fixed_state_at(const FixedPlan& plan, double t);

private:
    SignalHead head_;
    SignalState state_ = SignalState::Red;
    double last_t_ = 0.0;

    // Fixed plan bookkeeping: one-shot green-start boundary moves.
    std::vector<std::pair<double, double>> applied_moves_;  // (boundary time, delta)
    std::vector<ScheduledShift> shifts_;

    // Priority override (fixed plans with the hook, and actuated heads).
    bool priority_active_ = false;
    double priority_green_until_ = 0.0;

    // Actuated bookkeeping.
    double phase_started_ = 0.0;
    double last_occupancy_t_ = -1e18;

    void apply_due_shifts(double t);
    SignalState fixed_state_now(double t) const;
    double cycle_length() const;
};

}  // namespace csim::world
