#pragma once

#include <array>

#include "attctl/vec3.hpp"

namespace attctl {

/// Shrinking performance funnel parameters (per axis):
///   ρ(t) = (ρ0+ρ∞)/2 − (ρ0−ρ∞)/2 · tanh((t − T_s)/f_s)
/// Invariants: ρ0 > ρ∞ > 0, f_s > 0.
struct PerfFunctionParams {
    double rho0 = 1.0;
    double rho_inf = 0.85;
    double t_shift = 30.0;  // seconds, center of the tanh descent
    double f_scale = 60.0;  // seconds, descent time scale
};

/// Barrier-function parameters; both strictly positive.
struct BlfParams {
    double k1 = 1e-4;
    double f1 = 100.0;
};

/// Exponentially decaying evaluation ceiling:
///   S(t) = (S0 − S∞)·e^{−k·t} + S∞
/// Invariants: S0 > S∞ > 0, k_rate > 0.
struct EvalFunctionParams {
    double s0 = 2e-3;
    double s_inf = 8.2e-7;
    double k_rate = 0.35;  // 1/s
};

/// Funnel value and its exact analytic derivative at time t.
/// ρ is strictly decreasing; ρ∞ < ρ(t) ≤ ρ0 up to the tanh saturation tails.
struct PerfValue {
    double rho = 0.0;
    double rho_dot = 0.0;
};
PerfValue perf_value(double t, const PerfFunctionParams& p);

/// Normalized (funnel-relative) error ε = e/ρ. The funnel constraint is
/// satisfied iff |ε| < 1. Throws invalid_input_error when ρ ≤ 0.
double transform_error(double e_i, double rho_i);

/// Diagonal funnel matrices for the vector form ε = Ψ·qv:
/// psi = diag(1/ρ_i), eta = diag(ρ̇_i/ρ_i).
struct FunnelMatrices {
    Mat3 psi{};
    Mat3 eta{};
    Vec3 rho{};
    Vec3 rho_dot{};
};
FunnelMatrices funnel_matrices(double t, const std::array<PerfFunctionParams, 3>& per_axis);

/// Barrier value V1 = (k1/2)·F1·ln cosh(‖ε‖²/F1) ≥ 0 (zero iff ε = 0) and its
/// exact gradient ∂V1/∂ε = k1·tanh(‖ε‖²/F1)·ε.
struct BlfValue {
    double value = 0.0;
    Vec3 gradient{};
};
BlfValue blf_value_and_gradient(const Vec3& eps, const BlfParams& p);

/// Evaluation ceiling S(t) and its analytic derivative.
struct EvalValue {
    double s = 0.0;
    double s_dot = 0.0;
};
EvalValue eval_value(double t, const EvalFunctionParams& p);

/// Certifies k_m·tanh(γx) ≥ x on [0, k_u] by returning the minimum of
/// k_m·tanh(γx) − x over a dense uniform grid (default 10^4 points).
/// A nonnegative return certifies the dominance premise used by the
/// virtual-control law.
double tanh_dominance_margin(double k_m, double gamma, double k_u, int grid_points = 10000);

}  // namespace attctl
