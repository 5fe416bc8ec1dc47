#pragma once

#include <string>
#include <vector>

#include "attctl/controller.hpp"
#include "attctl/dynamics.hpp"
#include "attctl/scenario.hpp"
#include "attctl/trigger.hpp"

namespace attctl {

/// One logged row per control step; fixed column order (see trace_io.hpp).
struct TraceRecord {
    double t = 0.0;
    UnitQuaternion q_e{};
    Vec3 omega{};
    double omega_norm = 0.0;
    Vec3 u_cmd{};   // saturated live command
    Vec3 u_act{};   // actuator output for the coming interval
    Vec3 e_u{};     // u_cmd − u_held (held value is zero in OFF mode)
    int mode = 1;   // 1 = ON, 0 = OFF
    Vec3 rho{};
    Vec3 eps{};
    Vec3 alpha{};
    double v1 = 0.0;
    double v2 = 0.0;
    double s2 = 0.0;
    std::array<bool, 3> saturated{};
};

/// Run-level metrics; every number is recomputable from the trace rows.
struct SimSummary {
    double settling_time = 0.0;        // first t after which max_i|q_i| ≤ 1e-3 persistently
    double terminal_error_deg = 0.0;   // rotation angle at t_end
    double late_max_qe = 0.0;          // max_i |q_i| over the last 20 s
    double max_omega_norm = 0.0;
    double t_max_omega = 0.0;
    double max_alpha_norm = 0.0;
    double alpha_budget = 0.0;         // max over samples of k_m·M_ω·max_i ρ_i(t)
    int on_events = 0;                 // ON transitions incl. the initial one
    double mean_update_rate_hz = 0.0;  // ON transitions per second over the maneuver window
    double on_fraction = 0.0;          // ON-time fraction over the maneuver window
    double maneuver_window = 0.0;      // [0, settling_time]
    double min_ceiling_gap = 0.0;      // min over samples of S2 − V2
    bool ceiling_respected = true;     // V2 < S2 at every sample
    bool funnel_containment = true;    // |q_i| < ρ_i at every sample
    double max_eps_abs = 0.0;
    int ku_violations = 0;             // samples with any |ε_i| > k_u
    int saturated_steps = 0;
    double min_q0 = 1.0;               // trace minimum of |q0|
    bool completed = false;
    std::string failure_reason;
};

struct Trace {
    std::vector<TraceRecord> records;
    std::vector<TriggerEvent> events;
    SimSummary summary;
    std::string config_hash;
};

/// Fixed-step closed-loop simulator. Per step:
/// funnel → ε → α, α̇ → command → saturation → V1/V2/S2 → trigger →
/// RK4 over dt (substeps) with the held input and analytic disturbance →
/// quaternion renormalization → record.
class SimEngine {
public:
    struct Options {
        bool disable_controller = false;   // torque-free plant (conservation tests)
        bool disable_disturbance = false;
    };

    explicit SimEngine(const ScenarioConfig& config) : SimEngine(config, Options{}) {}
    SimEngine(const ScenarioConfig& config, const Options& options);

    /// Run the full episode. On singularity/numeric failure the partial
    /// trace is returned with summary.completed = false and the reason set.
    Trace run();

    const ScenarioConfig& config() const noexcept { return config_; }
    const InertiaModel& inertia() const noexcept { return inertia_; }

private:
    ScenarioConfig config_;
    Options options_;
    InertiaModel inertia_;

    /// Advance the plant by one control period with the given held input.
    void integrate_step(SpacecraftState& state, double t, const Vec3& u_act) const;
};

/// (Re)compute every summary statistic from the records and events; leaves
/// `completed`/`failure_reason` untouched. Used by the simulator and when
/// loading stored traces.
void compute_summary(Trace& trace, const ScenarioConfig& config);

}  // namespace attctl
