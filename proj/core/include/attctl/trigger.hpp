#pragma once

#include <vector>

#include "attctl/vec3.hpp"

namespace attctl {

/// Parameters of the composite intermittent actuation trigger.
/// All strictly positive. Energized ("ON") intervals terminate when the
/// squared input error crosses the decaying envelope s·e^{−βt} + m (ACT) or
/// after T_max seconds (PAS); de-energized ("OFF") intervals terminate when
/// the evaluation-ceiling margin S2 − V2 shrinks to δ_m.
struct TriggerParams {
    double s = 15.0;
    double beta = 0.35;    // 1/s
    double m = 1.2e-8;
    double t_max = 0.7;    // seconds
    double delta_m = 4.5e-8;
};

enum class TriggerMode { kOn, kOff };

enum class TriggerReason {
    kAct,      // input-error envelope crossing (has priority on ties)
    kPas,      // hold-duration cap
    kEnvelope  // evaluation-ceiling margin reached (turn-on)
};

struct TriggerEvent {
    double t = 0.0;
    TriggerMode to = TriggerMode::kOn;
    TriggerReason reason = TriggerReason::kEnvelope;
};

/// Trigger state machine with zero-order hold. Modes strictly alternate
/// ON → OFF → ON; in OFF mode the actuator output is exactly zero.
struct TriggerState {
    TriggerMode mode = TriggerMode::kOn;
    double t_on_last = 0.0;
    double t_off_last = 0.0;
    Vec3 u_held{};
    std::vector<TriggerEvent> events;
    double last_t = -1.0;  // supervision-time monotonicity guard
};

/// Initial state: mode ON at t0 with the given (already saturated) command
/// held; logs the initial ON event.
TriggerState initial_state(double t0, const Vec3& u_cmd0);

/// One supervision step at time t. `u_cmd_saturated` is the live saturated
/// command, `v2`/`s2` the rate-layer storage value and its ceiling.
/// Returns the actuator output for the coming interval (held value in ON
/// mode, zero in OFF mode) and mutates `trig` in place, logging transitions.
/// Throws contract_violation_error on non-increasing supervision times.
Vec3 evaluate(TriggerState& trig, double t, const Vec3& u_cmd_saturated,
              double v2, double s2, const TriggerParams& params);

}  // namespace attctl
