#include "attctl/performance.hpp"

#include <cmath>

#include "attctl/errors.hpp"

namespace attctl {

PerfValue perf_value(double t, const PerfFunctionParams& p) {
    const double mid = 0.5 * (p.rho0 + p.rho_inf);
    const double half = 0.5 * (p.rho0 - p.rho_inf);
    const double th = std::tanh((t - p.t_shift) / p.f_scale);
    PerfValue v;
    v.rho = mid - half * th;
    v.rho_dot = -half / p.f_scale * (1.0 - th * th);
    return v;
}

double transform_error(double e_i, double rho_i) {
    if (rho_i <= 0.0) {
        throw invalid_input_error("transform_error: funnel radius must be positive");
    }
    return e_i / rho_i;
}

FunnelMatrices funnel_matrices(double t, const std::array<PerfFunctionParams, 3>& per_axis) {
    FunnelMatrices f;
    double rho[3], rho_dot[3];
    for (int i = 0; i < 3; ++i) {
        const PerfValue v = perf_value(t, per_axis[static_cast<size_t>(i)]);
        if (v.rho <= 0.0) {
            throw invalid_input_error("funnel_matrices: funnel radius must be positive");
        }
        rho[i] = v.rho;
        rho_dot[i] = v.rho_dot;
    }
    f.rho = {rho[0], rho[1], rho[2]};
    f.rho_dot = {rho_dot[0], rho_dot[1], rho_dot[2]};
    f.psi = Mat3::diag({1.0 / rho[0], 1.0 / rho[1], 1.0 / rho[2]});
    f.eta = Mat3::diag({rho_dot[0] / rho[0], rho_dot[1] / rho[1], rho_dot[2] / rho[2]});
    return f;
}

BlfValue blf_value_and_gradient(const Vec3& eps, const BlfParams& p) {
    const double ee = dot(eps, eps);
    BlfValue v;
    v.value = 0.5 * p.k1 * p.f1 * std::log(std::cosh(ee / p.f1));
    v.gradient = eps * (p.k1 * std::tanh(ee / p.f1));
    return v;
}

EvalValue eval_value(double t, const EvalFunctionParams& p) {
    const double e = std::exp(-p.k_rate * t);
    EvalValue v;
    v.s = (p.s0 - p.s_inf) * e + p.s_inf;
    v.s_dot = -p.k_rate * (p.s0 - p.s_inf) * e;
    return v;
}

double tanh_dominance_margin(double k_m, double gamma, double k_u, int grid_points) {
    // Grid starts one step above zero: both sides vanish at x = 0, so the
    // margin there is identically zero and says nothing about dominance.
    double margin = k_m * std::tanh(gamma * k_u) - k_u;  // start at the right endpoint
    for (int i = 1; i <= grid_points; ++i) {
        const double x = k_u * static_cast<double>(i) / grid_points;
        margin = std::fmin(margin, k_m * std::tanh(gamma * x) - x);
    }
    return margin;
}

}  // namespace attctl
