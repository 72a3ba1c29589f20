#include "corridorsim/world/signal.hpp"

#include <algorithm>
#include <cmath>

#include "corridorsim/common/error.hpp"

namespace csim::world {

namespace {
constexpr double kBoundaryTol = 1e-6;
constexpr double kPriorityRedTruncate = 2.0;  // s of red served before a forced green
}  // namespace

SignalRuntime::SignalRuntime(const SignalHead& head) : head_(head) {
    if (head_.has_fixed) {
        state_ = fixed_state_at(head_.fixed, 0.0);
    } else {
        state_ = SignalState::Green;
        phase_started_ = 0.0;
    }
}

double SignalRuntime::cycle_length() const {
    double total = 0.0;
    for (const auto& ph : head_.fixed.cycle) total += ph.duration;
    return total;
}

SignalState SignalRuntime::fixed_state_at(const FixedPlan& plan, double t) {
    double total = 0.0;
    for (const auto& ph : plan.cycle) total += ph.duration;
    if (total <= 0.0) return SignalState::Red;
    double pos = std::fmod(t + plan.offset, total);
    if (pos < 0.0) pos += total;
    for (const auto& ph : plan.cycle) {
        if (pos < ph.duration) return ph.state;
        pos -= ph.duration;
    }
    return plan.cycle.back().state;
}

void SignalRuntime::apply_due_shifts(double t) {
    if (!head_.has_fixed) return;
    const double cycle = cycle_length();
    if (cycle <= 0.0) return;

    for (auto& shift : shifts_) {
        if (shift.t_apply > t || shift.delta == 0.0) continue;

        // Locate the next green-start boundary after t in the base pattern
        // that has not been moved yet.
        double candidate = t;
        for (int guard = 0; guard < 64; ++guard) {
            // Scan base phase boundaries within one cycle after `candidate`.
            double pos = std::fmod(candidate + head_.fixed.offset, cycle);
            if (pos < 0.0) pos += cycle;
            double boundary = candidate - pos;  // cycle origin in absolute time
            double acc = 0.0;
            double found = -1.0;
            for (std::size_t pass = 0; pass < 2 && found < 0.0; ++pass) {
                acc = 0.0;
                for (std::size_t i = 0; i < head_.fixed.cycle.size(); ++i) {
                    const auto& ph = head_.fixed.cycle[i];
                    const auto& prev =
                        head_.fixed.cycle[(i + head_.fixed.cycle.size() - 1) % head_.fixed.cycle.size()];
                    const double start_abs = boundary + acc + (pass ? cycle : 0.0);
                    if (ph.state == SignalState::Green && prev.state != SignalState::Green &&
                        start_abs > candidate + kBoundaryTol) {
                        found = start_abs;
                        break;
                    }
                    acc += ph.duration;
                }
            }
            if (found < 0.0) break;
            const bool taken = std::any_of(applied_moves_.begin(), applied_moves_.end(),
                                           [&](const auto& m) {
                                               return std::abs(m.first - found) < kBoundaryTol;
                                           });
            if (!taken) {
                // Keep the moved start inside the adjacent phases.
                double delta = shift.delta;
                applied_moves_.emplace_back(found, delta);
                break;
            }
            candidate = found;  // boundary already moved, take the following one
        }
        shift.delta = 0.0;  // consumed
    }
}

SignalState SignalRuntime::fixed_state_now(double t) const {
    SignalState base = fixed_state_at(head_.fixed, t);
    for (const auto& [boundary, delta] : applied_moves_) {
        if (delta > 0.0 && t >= boundary - kBoundaryTol && t < boundary + delta - kBoundaryTol)
            return SignalState::Red;  // green start delayed
        if (delta < 0.0 && t >= boundary + delta - kBoundaryTol && t < boundary - kBoundaryTol)
            return SignalState::Green;  // green start advanced
    }
    return base;
}

SignalState SignalRuntime::update(double t, bool detector_occupancy, bool priority_request) {
    if (head_.has_fixed) {
        apply_due_shifts(t);
        if (head_.priority_request_hook && priority_request) {
            if (!priority_active_) priority_active_ = true;
            priority_green_until_ = t + kPriorityRedTruncate;  // short hold after request drops
            state_ = SignalState::Green;
            last_t_ = t;
            return state_;
        }
        if (priority_active_) {
            if (t < priority_green_until_) {
                state_ = SignalState::Green;
                last_t_ = t;
                return state_;
            }
            priority_active_ = false;
        }
        state_ = fixed_state_now(t);
        last_t_ = t;
        return state_;
    }

    // Actuated head.
    if (detector_occupancy) last_occupancy_t_ = t;
    const auto& a = head_.actuated;
    const double in_phase = t - phase_started_;

    switch (state_) {
        case SignalState::Green: {
            const bool past_min = in_phase >= a.min_green;
            const bool gap_out = past_min && (t - last_occupancy_t_) >= a.gap_out;
            const bool maxed = in_phase >= a.max_green;
            const bool hold_priority = head_.priority_request_hook && priority_request && !maxed;
            if ((gap_out || maxed) && !hold_priority) {
                state_ = SignalState::Amber;
                phase_started_ = t;
            }
            break;
        }
        case SignalState::Amber:
            if (in_phase >= a.amber) {
                state_ = SignalState::Red;
                phase_started_ = t;
            }
            break;
        case SignalState::Red: {
            const bool priority_cut = head_.priority_request_hook && priority_request &&
                                      in_phase >= kPriorityRedTruncate;
            if (in_phase >= a.red_clearance || priority_cut) {
                state_ = SignalState::Green;
                phase_started_ = t;
            }
            break;
        }
    }
    last_t_ = t;
    return state_;
}

std::vector<PhaseWindow> SignalRuntime::schedule(double t, double horizon) const {
    std::vector<PhaseWindow> out;
    const double t_end = t + horizon;

    if (head_.has_fixed) {
        const double cycle = cycle_length();
        if (cycle <= 0.0) return out;
        double pos = std::fmod(t + head_.fixed.offset, cycle);
        if (pos < 0.0) pos += cycle;
        double origin = t - pos;  // absolute time of a cycle start

        std::vector<PhaseWindow> raw;
        for (double base = origin - cycle; base < t_end + cycle; base += cycle) {
            double acc = 0.0;
            for (const auto& ph : head_.fixed.cycle) {
                raw.push_back({ph.state, base + acc, base + acc + ph.duration});
                acc += ph.duration;
            }
        }
        // Apply one-shot green-start moves already known to the controller.
        for (const auto& [boundary, delta] : applied_moves_) {
            for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
                if (std::abs(raw[i].end - boundary) < kBoundaryTol &&
                    raw[i + 1].state == SignalState::Green) {
                    raw[i].end += delta;
                    raw[i + 1].start += delta;
                }
            }
        }
        for (auto& w : raw) {
            const double a = std::max(w.start, t);
            const double b = std::min(w.end, t_end);
            if (b - a > kBoundaryTol) out.push_back({w.state, a, b});
        }
        std::sort(out.begin(), out.end(),
                  [](const PhaseWindow& x, const PhaseWindow& y) { return x.start < y.start; });
        return out;
    }

    // Actuated: naive continuation from the current phase. Green-end estimate
    // slides with observed occupancy, so consecutive forecasts can jump.
    const auto& a = head_.actuated;
    double cursor = t;
    SignalState st = state_;
    double phase_end;
    switch (st) {
        case SignalState::Green:
            phase_end = std::max(phase_started_ + a.min_green,
                                 std::min(last_occupancy_t_ + a.gap_out, phase_started_ + a.max_green));
            phase_end = std::max(phase_end, t);
            break;
        case SignalState::Amber:
            phase_end = phase_started_ + a.amber;
            break;
        default:
            phase_end = phase_started_ + a.red_clearance;
            break;
    }
    while (cursor < t_end) {
        const double end = std::max(phase_end, cursor);
        if (end > cursor) out.push_back({st, cursor, std::min(end, t_end)});
        cursor = end;
        switch (st) {
            case SignalState::Green:
                st = SignalState::Amber;
                phase_end = cursor + a.amber;
                break;
            case SignalState::Amber:
                st = SignalState::Red;
                phase_end = cursor + a.red_clearance;
                break;
            default:
                st = SignalState::Green;
                phase_end = cursor + a.min_green;
                break;
        }
    }
    return out;
}

}  // namespace csim::world
