#include "attctl/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

constexpr int kRatioSamples = 10000;
constexpr size_t kMaxViolatingTimes = 100;

void note_violation(EnvelopeReport& rep, double t, double exceedance) {
    ++rep.violations;
    rep.max_violation = std::fmax(rep.max_violation, exceedance);
    if (rep.violating_times.size() < kMaxViolatingTimes) {
        rep.violating_times.push_back(t);
    }
}

}  // namespace

DerivedConstants derive_constants(const ScenarioConfig& config, double q0_floor) {
    DerivedConstants k;
    k.q0_floor = q0_floor;
    k.beta = config.trigger.beta;
    k.b = config.young_b();
    k.b_alpha = config.analysis.b_alpha;
    k.b_2alpha = config.analysis.b_2alpha;
    k.trig_s = config.trigger.s;
    k.trig_m = config.trigger.m;
    k.delta_m = config.trigger.delta_m;
    k.t_max = config.trigger.t_max;
    k.s2_inf = config.eval.s_inf;

    // Funnel extrema and slope ratios by dense sampling over [0, t_end].
    k.rho_max = 0.0;
    k.rho_min = std::numeric_limits<double>::infinity();
    k.rr_abs_max = 0.0;
    k.rr_signed_max = -std::numeric_limits<double>::infinity();
    for (const PerfFunctionParams& axis : config.funnel) {
        for (int i = 0; i <= kRatioSamples; ++i) {
            const double t = config.t_end * static_cast<double>(i) / kRatioSamples;
            const PerfValue v = perf_value(t, axis);
            k.rho_max = std::fmax(k.rho_max, v.rho);
            k.rho_min = std::fmin(k.rho_min, v.rho);
            const double ratio = v.rho_dot / v.rho;
            k.rr_abs_max = std::fmax(k.rr_abs_max, std::fabs(ratio));
            k.rr_signed_max = std::fmax(k.rr_signed_max, ratio);
        }
    }

    const auto& ctl = config.controller;
    const double lambda_max = std::fmax(config.inertia_diag.x,
                                        std::fmax(config.inertia_diag.y, config.inertia_diag.z));
    const double lambda_min = std::fmin(config.inertia_diag.x,
                                        std::fmin(config.inertia_diag.y, config.inertia_diag.z));

    k.b1 = q0_floor * ctl.m_omega - 4.0 * k.rr_abs_max;
    if (k.b1 <= 0.0) {
        throw infeasibility_error("B1 > 0",
                                  "funnel shrink rate exceeds the attitude-layer decay budget");
    }
    k.b2 = 2.0 * (ctl.k2 - k.b / 2.0) / lambda_max;
    if (k.b2 <= 0.0) {
        throw infeasibility_error("B2 > 0", "K2 must exceed b/2");
    }
    k.c1 = std::fmin(k.b1, k.b2);
    k.c_eps = q0_floor * ctl.m_omega - 4.0 * k.rr_signed_max;

    if (k.c1 >= k.beta) {
        throw infeasibility_error(
            "C1 < beta", "trigger threshold must decay faster than the closed-loop envelope");
    }
    k.layer1_precondition = k.c_eps > k.beta / 2.0;
    k.diag_c1_gt_beta = k.c1 > k.beta;
    k.diag_ceps_gt_half_beta = k.layer1_precondition;

    k.d0 = 0.8355 * ctl.p * ctl.dist_comp_mag;
    k.v_inf = (k.d0 + config.trigger.m / (2.0 * k.b)) / k.c1;
    if (config.eval.s_inf <= k.v_inf) {
        throw infeasibility_error("S2_inf > V_inf",
                                  "ceiling floor must exceed the envelope asymptote");
    }

    const double d_bound = config.disturbance.bound;
    k.b_omega = ctl.k_m * ctl.m_omega * k.rho_max;
    k.b_q = std::sqrt(3.0) * config.blf.k1 * ctl.k_u / k.rho_min;
    k.u_z = lambda_max * k.b_omega * k.b_omega + d_bound + lambda_max * k.b_alpha;
    k.a0 = k.u_z * std::sqrt(2.0 / lambda_min);
    k.b_c = (1.0 + std::sqrt(3.0)) * d_bound + lambda_max * k.b_alpha + k.b_q;

    const double j_inv_norm = 1.0 / lambda_min;
    const double comp_rate = ctl.k2 + ctl.dist_comp_mag / ctl.p;
    k.r1 = lambda_max * k.b_omega * j_inv_norm + k.b_omega + comp_rate * j_inv_norm;
    k.r2 = comp_rate * k.b_alpha + lambda_max * k.b_2alpha +
           k.b_c * lambda_max * k.b_omega * j_inv_norm + k.b_c * k.b_omega +
           k.b_c * comp_rate * j_inv_norm + k.b_q;
    k.q1 = k.r1 * ctl.k2 + 2.0 * k.r1 + 1.0;
    k.q2 = 2.0 * k.r1 * ctl.k2 / lambda_max;
    k.q3 = k.r2 * k.r2;
    k.g1 = config.eval.s0 - k.v_inf;  // conservative: V2(t_on) ≤ S2(0)
    k.g2 = k.v_inf;
    k.m1 = k.q1 * config.trigger.s + k.q2 * k.g1;
    k.m2 = k.q1 * config.trigger.m + k.q2 * k.g2 + k.q3;

    k.n_k = (config.eval.s_inf - k.v_inf) * (1.0 - std::exp(-k.beta * config.trigger.t_max));
    if (config.trigger.delta_m >= k.n_k) {
        throw infeasibility_error("delta_m < N_k",
                                  "turn-on buffer must be below the guaranteed per-hold decrease");
    }

    const double root = std::sqrt(2.0 / lambda_min);
    k.g_s = k.b_q * root * std::sqrt(config.eval.s0 - config.eval.s_inf);
    k.g_m = k.b_q * root * std::sqrt(config.eval.s_inf);
    return k;
}

EnvelopeReport check_on_envelope(const Trace& trace, const DerivedConstants& constants) {
    EnvelopeReport rep;
    rep.name = "on_envelope";
    double v_start = 0.0, t_start = 0.0;
    int prev_mode = 0;
    for (const TraceRecord& r : trace.records) {
        if (r.mode == 1) {
            if (prev_mode == 0) {
                v_start = r.v1 + r.v2;
                t_start = r.t;
                ++rep.intervals_checked;
            }
            ++rep.samples_checked;
            const double env = (v_start - constants.v_inf) *
                                   std::exp(-constants.beta * (r.t - t_start)) +
                               constants.v_inf;
            const double exceed = (r.v1 + r.v2) - env;
            if (exceed > 0.0) note_violation(rep, r.t, exceed);
        }
        prev_mode = r.mode;
    }
    return rep;
}

EnvelopeReport check_off_bound(const Trace& trace, const DerivedConstants& constants) {
    EnvelopeReport rep;
    rep.name = "off_bound";
    double v2_start = 0.0, t_start = 0.0, c_m = 0.0;
    int prev_mode = 1;
    for (const TraceRecord& r : trace.records) {
        if (r.mode == 0) {
            if (prev_mode == 1) {
                v2_start = r.v2;
                t_start = r.t;
                c_m = (2.0 / constants.a0) * std::sqrt(std::fmax(0.0, v2_start));
                ++rep.intervals_checked;
            }
            ++rep.samples_checked;
            const double tau = r.t - t_start;
            const double bound = v2_start + (constants.a0 * constants.a0 / 4.0) * tau * tau +
                                 (constants.a0 * constants.a0 / 2.0) * tau * c_m;
            const double exceed = r.v2 - bound;
            if (exceed > 0.0) note_violation(rep, r.t, exceed);
        }
        prev_mode = r.mode;
    }
    return rep;
}

EnvelopeReport check_off_layer1(const Trace& trace, const DerivedConstants& constants) {
    EnvelopeReport rep;
    rep.name = "off_layer1";
    if (!constants.layer1_precondition) {
        rep.skipped = true;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "precondition C_eps > beta/2 fails (C_eps = %.6g, beta/2 = %.6g); "
                      "attitude-layer envelope not applicable",
                      constants.c_eps, constants.beta / 2.0);
        rep.diagnostic = buf;
        return rep;
    }
    if (trace.records.empty()) return rep;
    const double v1_0 = trace.records.front().v1;
    const double asymptote = constants.g_m / constants.c_eps;
    rep.intervals_checked = 1;
    for (const TraceRecord& r : trace.records) {
        ++rep.samples_checked;
        const double env = (v1_0 - asymptote) * std::exp(-constants.beta / 2.0 * r.t) + asymptote;
        const double exceed = r.v1 - env;
        if (exceed > 0.0) note_violation(rep, r.t, exceed);
    }
    return rep;
}

EnvelopeReport check_ceiling(const Trace& trace) {
    EnvelopeReport rep;
    rep.name = "ceiling_v2_lt_s2";
    rep.intervals_checked = 1;
    for (const TraceRecord& r : trace.records) {
        ++rep.samples_checked;
        if (r.v2 >= r.s2) note_violation(rep, r.t, r.v2 - r.s2);
    }
    return rep;
}

double miet_turnoff_bound(const DerivedConstants& constants, double t_on, double v2_at_ton) {
    const double decayed = constants.trig_s * std::exp(-constants.beta * t_on);
    double m1 = constants.m1;
    if (v2_at_ton >= 0.0) {
        const double g1 = std::fmax(0.0, v2_at_ton - constants.v_inf);
        m1 = constants.q1 * constants.trig_s + constants.q2 * g1;
    }
    return (decayed + constants.trig_m) /
           (constants.beta * decayed + m1 + constants.m2);
}

double miet_turnon_bound(const DerivedConstants& constants, double s2_at_toff,
                         double s2_dot_at_toff, double delta_m) {
    if (delta_m >= constants.n_k) {
        throw infeasibility_error("delta_m < N_k",
                                  "turn-on buffer must be below the guaranteed per-hold decrease");
    }
    const double a = constants.a0 * constants.a0 / 4.0;
    const double w1 = (2.0 / constants.a0) *
                      std::sqrt(std::fmax(0.0, s2_at_toff - constants.n_k));
    const double b = std::fabs(s2_dot_at_toff) + (constants.a0 * constants.a0 / 2.0) * w1;
    const double c = delta_m - constants.n_k;  // < 0
    // Positive root of a·x² + b·x + c = 0 in the cancellation-free form.
    return 2.0 * (-c) / (b + std::sqrt(b * b - 4.0 * a * c));
}

EnvelopeReport verify_inter_event_times(const Trace& trace, const DerivedConstants& constants,
                                        const ScenarioConfig& config) {
    EnvelopeReport rep;
    rep.name = "inter_event_times";
    double min_margin = std::numeric_limits<double>::infinity();
    const auto& events = trace.events;
    for (size_t i = 0; i + 1 < events.size(); ++i) {
        const TriggerEvent& a = events[i];
        const TriggerEvent& b = events[i + 1];
        const double gap = b.t - a.t;
        double bound = 0.0;
        const auto idx = static_cast<size_t>(std::lround(a.t / config.dt));
        if (a.to == TriggerMode::kOn) {
            const double v2_at_ton =
                idx < trace.records.size() ? trace.records[idx].v2 : -1.0;
            bound = miet_turnoff_bound(constants, a.t, v2_at_ton);
        } else {
            const EvalValue s2 = eval_value(a.t, config.eval);
            bound = miet_turnon_bound(constants, s2.s, s2.s_dot, config.trigger.delta_m);
        }
        ++rep.intervals_checked;
        ++rep.samples_checked;
        if (!(bound > 0.0)) note_violation(rep, a.t, 1.0);
        if (gap < bound) note_violation(rep, a.t, bound - gap);
        min_margin = std::fmin(min_margin, gap - bound);
    }
    if (rep.intervals_checked > 0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "min observed gap margin over bound: %.6e s", min_margin);
        rep.diagnostic = buf;
    }
    return rep;
}

LyapunovTrajectories lyapunov_trajectories(const Trace& trace, const ScenarioConfig& config) {
    LyapunovTrajectories out;
    out.v1.reserve(trace.records.size());
    out.v2.reserve(trace.records.size());
    out.s2.reserve(trace.records.size());
    const InertiaModel inertia = InertiaModel::from_diagonal(config.inertia_diag);
    constexpr double kTol = 1e-10;

    for (const TraceRecord& r : trace.records) {
        const FunnelMatrices funnel = funnel_matrices(r.t, config.funnel);
        const Vec3 eps = funnel.psi * r.q_e.qv;
        const double v1 = blf_value_and_gradient(eps, config.blf).value;
        const Vec3 z2 = r.omega - r.alpha;
        const double v2 = 0.5 * dot(z2, inertia.apply(z2));
        const double s2 = eval_value(r.t, config.eval).s;
        if (std::fabs(v1 - r.v1) > kTol || std::fabs(v2 - r.v2) > kTol ||
            std::fabs(s2 - r.s2) > kTol) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "stored Lyapunov values disagree with recomputation at t = %.6f", r.t);
            throw internal_consistency_error(buf);
        }
        out.v1.push_back(v1);
        out.v2.push_back(v2);
        out.s2.push_back(s2);
    }
    for (size_t i = 1; i + 1 < out.v2.size(); ++i) {
        if (out.v2[i] > out.v2[i - 1] && out.v2[i] > out.v2[i + 1]) ++out.local_maxima_v2;
    }
    return out;
}

AlphaBoundsReport check_alpha_bounds(const Trace& trace, const ScenarioConfig& config) {
    AlphaBoundsReport rep;
    rep.assumed_b_alpha = config.analysis.b_alpha;
    rep.assumed_b_2alpha = config.analysis.b_2alpha;
    const double dt = config.dt;
    Vec3 prev_dot{};
    for (size_t i = 1; i < trace.records.size(); ++i) {
        const Vec3 a_dot = (trace.records[i].alpha - trace.records[i - 1].alpha) * (1.0 / dt);
        rep.observed_max_alpha_dot = std::fmax(rep.observed_max_alpha_dot, norm(a_dot));
        if (i >= 2) {
            const Vec3 a_ddot = (a_dot - prev_dot) * (1.0 / dt);
            rep.observed_max_alpha_ddot = std::fmax(rep.observed_max_alpha_ddot, norm(a_ddot));
        }
        prev_dot = a_dot;
    }
    return rep;
}

AnalysisReport analyze_trace(const Trace& trace, const ScenarioConfig& config) {
    AnalysisReport rep;
    const double floor = trace.summary.min_q0;
    rep.constants = derive_constants(config, floor);
    lyapunov_trajectories(trace, config);  // throws on stored/recomputed mismatch
    rep.checks.push_back(check_on_envelope(trace, rep.constants));
    rep.checks.push_back(check_off_bound(trace, rep.constants));
    rep.checks.push_back(check_off_layer1(trace, rep.constants));
    rep.checks.push_back(check_ceiling(trace));
    rep.checks.push_back(verify_inter_event_times(trace, rep.constants, config));
    rep.alpha_bounds = check_alpha_bounds(trace, config);
    rep.all_passed = true;
    for (const EnvelopeReport& c : rep.checks) {
        if (!c.passed()) rep.all_passed = false;
    }
    return rep;
}

}  // namespace attctl
