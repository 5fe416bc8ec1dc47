#include "attctl/sim.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "attctl/errors.hpp"
#include "attctl/quaternion.hpp"

namespace attctl {

SimEngine::SimEngine(const ScenarioConfig& config, const Options& options)
    : config_(config),
      options_(options),
      inertia_(InertiaModel::from_diagonal(config.inertia_diag)) {
    validate_config(config_);
}

void SimEngine::integrate_step(SpacecraftState& state, double t, const Vec3& u_act) const {
    const int segments = config_.substeps;
    const double h = config_.dt / segments;
    static constexpr double c[4] = {0.0, 0.5, 0.5, 1.0};

    for (int seg = 0; seg < segments; ++seg) {
        const double t0 = t + seg * h;
        const Vec3 y_qv = state.q_e.qv;
        const double y_q0 = state.q_e.q0;
        const Vec3 y_w = state.omega;

        Vec3 kq[4], kw[4];
        double k0[4];
        Vec3 p_qv = y_qv, p_w = y_w;
        double p_q0 = y_q0;
        for (int i = 0; i < 4; ++i) {
            if (i > 0) {
                p_qv = y_qv + kq[i - 1] * (c[i] * h);
                p_q0 = y_q0 + k0[i - 1] * (c[i] * h);
                p_w = y_w + kw[i - 1] * (c[i] * h);
            }
            const double tt = t0 + c[i] * h;
            const SpacecraftState stage{{p_qv, p_q0}, p_w};
            const Vec3 d = options_.disable_disturbance ? Vec3{} : disturbance_at(tt, config_.disturbance);
            const StateRate rate = state_derivative(stage, u_act, d, inertia_);
            kq[i] = rate.qv_dot;
            k0[i] = rate.q0_dot;
            kw[i] = rate.omega_dot;
        }
        state.q_e.qv = y_qv + (kq[0] + (kq[1] + kq[2]) * 2.0 + kq[3]) * (h / 6.0);
        state.q_e.q0 = y_q0 + (k0[0] + 2.0 * k0[1] + 2.0 * k0[2] + k0[3]) * (h / 6.0);
        state.omega = y_w + (kw[0] + (kw[1] + kw[2]) * 2.0 + kw[3]) * (h / 6.0);
    }
    // Unconditional renormalization keeps drift at integrator noise level.
    const double n = state.q_e.norm();
    state.q_e.qv = state.q_e.qv / n;
    state.q_e.q0 /= n;
}

Trace SimEngine::run() {
    Trace trace;
    trace.config_hash = config_hash(config_);

    // Exact normalization of the configured attitudes before composing the
    // initial error (scenario values are typically given to few decimals).
    UnitQuaternion qs = config_.q_s0;
    UnitQuaternion qd = config_.q_d;
    {
        const double ns = qs.norm();
        qs.qv = qs.qv / ns;
        qs.q0 /= ns;
        const double nd = qd.norm();
        qd.qv = qd.qv / nd;
        qd.q0 /= nd;
    }

    SpacecraftState state;
    state.q_e = quat_error(qs, qd);
    state.omega = config_.omega0;

    const long n = std::lround(config_.t_end / config_.dt);
    trace.records.reserve(static_cast<size_t>(n) + 1);

    TriggerState trig;
    AlphaHistory hist;
    bool first_step = true;

    try {
        for (long k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) * config_.dt;

            const FunnelMatrices funnel = funnel_matrices(t, config_.funnel);
            const Vec3 eps = funnel.psi * state.q_e.qv;

            Vec3 alpha{}, alpha_dot{}, u{};
            std::array<bool, 3> saturated{};
            if (!options_.disable_controller) {
                alpha = virtual_control(state.q_e, eps, funnel, config_.controller);
                hist.push(t, alpha);
                alpha_dot = alpha_derivative(hist);
                u = control_command(state, alpha, alpha_dot, state.q_e, eps, funnel,
                                    inertia_, config_.controller, config_.blf);
                u = saturate_command(u, config_.controller.u_max, saturated);
            }

            const Vec3 z2 = state.omega - alpha;
            const double v1 = blf_value_and_gradient(eps, config_.blf).value;
            const double v2 = 0.5 * dot(z2, inertia_.apply(z2));
            const double s2 = eval_value(t, config_.eval).s;

            if (first_step) {
                trig = initial_state(t, u);
                first_step = false;
            }
            const Vec3 u_act = options_.disable_controller
                                   ? Vec3{}
                                   : evaluate(trig, t, u, v2, s2, config_.trigger);

            TraceRecord rec;
            rec.t = t;
            rec.q_e = state.q_e;
            rec.omega = state.omega;
            rec.omega_norm = norm(state.omega);
            rec.u_cmd = u;
            rec.u_act = u_act;
            rec.e_u = input_error(u, trig.u_held);
            rec.mode = trig.mode == TriggerMode::kOn ? 1 : 0;
            rec.rho = funnel.rho;
            rec.eps = eps;
            rec.alpha = alpha;
            rec.v1 = v1;
            rec.v2 = v2;
            rec.s2 = s2;
            rec.saturated = saturated;
            trace.records.push_back(rec);

            if (!is_finite(state.q_e.qv) || !std::isfinite(state.q_e.q0) ||
                !is_finite(state.omega)) {
                throw numeric_failure_error("non-finite state", t);
            }
            if (k == n) break;
            integrate_step(state, t, u_act);
        }
        trace.summary.completed = true;
    } catch (const singularity_error& e) {
        trace.summary.completed = false;
        trace.summary.failure_reason = e.what();
    } catch (const numeric_failure_error& e) {
        trace.summary.completed = false;
        trace.summary.failure_reason = e.what();
    }

    trace.events = trig.events;
    compute_summary(trace, config_);
    return trace;
}

void compute_summary(Trace& trace, const ScenarioConfig& config) {
    SimSummary& s = trace.summary;
    if (trace.records.empty()) return;

    const double dt = config.dt;
    double settle_last = 0.0;
    s.min_ceiling_gap = std::numeric_limits<double>::infinity();
    s.min_q0 = std::numeric_limits<double>::infinity();
    const double late_window_start = config.t_end - 20.0;

    for (const TraceRecord& r : trace.records) {
        const double q_max = max_abs_component(r.q_e.qv);
        if (q_max > 1e-3) settle_last = r.t;
        if (r.omega_norm > s.max_omega_norm) {
            s.max_omega_norm = r.omega_norm;
            s.t_max_omega = r.t;
        }
        s.max_alpha_norm = std::fmax(s.max_alpha_norm, norm(r.alpha));
        const double budget = config.controller.k_m * config.controller.m_omega *
                              std::fmax(r.rho.x, std::fmax(r.rho.y, r.rho.z));
        s.alpha_budget = std::fmax(s.alpha_budget, budget);
        const double eps_max = max_abs_component(r.eps);
        s.max_eps_abs = std::fmax(s.max_eps_abs, eps_max);
        if (eps_max > config.controller.k_u) ++s.ku_violations;
        if (std::fabs(r.q_e.qv.x) >= r.rho.x || std::fabs(r.q_e.qv.y) >= r.rho.y ||
            std::fabs(r.q_e.qv.z) >= r.rho.z) {
            s.funnel_containment = false;
        }
        s.min_ceiling_gap = std::fmin(s.min_ceiling_gap, r.s2 - r.v2);
        if (r.v2 >= r.s2) s.ceiling_respected = false;
        if (r.saturated[0] || r.saturated[1] || r.saturated[2]) ++s.saturated_steps;
        if (r.t >= late_window_start) s.late_max_qe = std::fmax(s.late_max_qe, q_max);
        s.min_q0 = std::fmin(s.min_q0, std::fabs(r.q_e.q0));
    }

    s.settling_time = settle_last;
    const Vec3& qv_end = trace.records.back().q_e.qv;
    s.terminal_error_deg =
        2.0 * std::asin(std::fmin(1.0, norm(qv_end))) * 180.0 / std::numbers::pi;

    // Intermittency metrics over the maneuver window [0, settling_time].
    const double window = std::fmin(settle_last, config.t_end);
    s.maneuver_window = window;
    int on_events_total = 0;
    int on_events_window = 0;
    for (const TriggerEvent& e : trace.events) {
        if (e.to != TriggerMode::kOn) continue;
        ++on_events_total;
        if (e.t <= window) ++on_events_window;
    }
    s.on_events = on_events_total;
    s.mean_update_rate_hz = on_events_window / (window > 0.0 ? window : 1.0);

    const long window_steps = std::lround(window / dt);
    long on_steps = 0;
    for (long i = 0; i <= window_steps && i < static_cast<long>(trace.records.size()); ++i) {
        on_steps += trace.records[static_cast<size_t>(i)].mode;
    }
    s.on_fraction = static_cast<double>(on_steps) / static_cast<double>(window_steps + 1);
}

}  // namespace attctl
