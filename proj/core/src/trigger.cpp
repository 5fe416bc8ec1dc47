#include "attctl/trigger.hpp"

#include <cmath>

#include "attctl/dynamics.hpp"
#include "attctl/errors.hpp"

namespace attctl {

TriggerState initial_state(double t0, const Vec3& u_cmd0) {
    TriggerState s;
    s.mode = TriggerMode::kOn;
    s.t_on_last = t0;
    s.t_off_last = t0;
    s.u_held = u_cmd0;
    s.events.push_back({t0, TriggerMode::kOn, TriggerReason::kEnvelope});
    s.last_t = t0;
    return s;
}

Vec3 evaluate(TriggerState& trig, double t, const Vec3& u_cmd_saturated,
              double v2, double s2, const TriggerParams& params) {
    if (t < trig.last_t) {
        throw contract_violation_error("trigger evaluate: supervision times must not decrease");
    }
    trig.last_t = t;

    if (trig.mode == TriggerMode::kOn) {
        const Vec3 e_u = input_error(u_cmd_saturated, trig.u_held);
        const double threshold = params.s * std::exp(-params.beta * t) + params.m;
        // ACT takes priority if both conditions fire at the same step.
        if (dot(e_u, e_u) >= threshold) {
            trig.mode = TriggerMode::kOff;
            trig.t_off_last = t;
            trig.u_held = Vec3{};  // de-energized: held value is zero
            trig.events.push_back({t, TriggerMode::kOff, TriggerReason::kAct});
        } else if (t >= trig.t_on_last + params.t_max - 1e-12) {
            trig.mode = TriggerMode::kOff;
            trig.t_off_last = t;
            trig.u_held = Vec3{};
            trig.events.push_back({t, TriggerMode::kOff, TriggerReason::kPas});
        }
    } else {
        if (s2 - v2 <= params.delta_m) {
            trig.mode = TriggerMode::kOn;
            trig.t_on_last = t;
            trig.u_held = u_cmd_saturated;  // e_u resets to zero here
            trig.events.push_back({t, TriggerMode::kOn, TriggerReason::kEnvelope});
        }
    }

    return trig.mode == TriggerMode::kOn ? trig.u_held : Vec3{};
}

}  // namespace attctl
