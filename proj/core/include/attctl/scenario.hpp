#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "attctl/controller.hpp"
#include "attctl/dynamics.hpp"
#include "attctl/performance.hpp"
#include "attctl/trigger.hpp"

namespace attctl {

/// Analysis-side assumed bounds and conventions (see analysis.hpp).
struct AnalysisParams {
    double b = 0.0;            // Young's-inequality split; 0 ⇒ default to K2
    double b_alpha = 0.06;     // rad/s², assumed bound on ‖α̇‖ (checked a-posteriori)
    double b_2alpha = 0.5;     // rad/s³, assumed bound on ‖α̈‖ (checked a-posteriori)
    double q0_floor_apriori = 0.5;  // conservative |q0| floor for a-priori feasibility
};

/// Complete description of one closed-loop simulation.
struct ScenarioConfig {
    Vec3 inertia_diag{2.8, 2.5, 1.9};  // kg·m², principal moments
    DisturbanceModel disturbance{};
    UnitQuaternion q_s0{{0.5175, 0.3881, 0.4200}, 0.6366};
    UnitQuaternion q_d{{0.2, -0.5, -0.5}, -0.6782};
    Vec3 omega0{};
    std::array<PerfFunctionParams, 3> funnel{};
    BlfParams blf{};
    EvalFunctionParams eval{};  // k_rate is tied to trigger.beta at load time
    ControllerParams controller{};
    TriggerParams trigger{};
    AnalysisParams analysis{};
    double dt = 1e-3;      // control/supervision period, seconds
    double t_end = 100.0;  // seconds
    int substeps = 1;      // integrator sub-intervals per control period
    std::uint64_t seed = 0;  // reserved for randomized-IC sweeps

    /// Effective Young's-inequality parameter (defaults to K2).
    double young_b() const { return analysis.b > 0.0 ? analysis.b : controller.k2; }
};

/// Parse a scenario file: `key = value` lines, `#` comments, keys documented
/// in the README. Starts from defaults; unknown keys raise parse_error.
ScenarioConfig load_scenario(const std::string& path);

/// Apply one `key=value` override (same keys as the file format).
/// Throws parse_error for unknown keys or malformed values.
void apply_override(ScenarioConfig& config, const std::string& key_equals_value);

/// Structural validation (positivity, ordering, unit quaternions, dominance
/// margin). Feasibility inequalities live in the analysis module.
/// Throws invalid_input_error / infeasibility_error on violations.
void validate_config(const ScenarioConfig& config);

/// Canonical text serialization (sorted keys, full precision). Two configs
/// with identical fields serialize identically; basis of the config hash.
std::string canonical_text(const ScenarioConfig& config);

/// FNV-1a 64-bit hash of the canonical text, as fixed-width hex.
std::string config_hash(const ScenarioConfig& config);

}  // namespace attctl
