#pragma once

#include <array>

#include "attctl/quaternion.hpp"
#include "attctl/vec3.hpp"

namespace attctl {

/// Rigid-body inertia with cached extremal eigenvalues and inverse.
/// Invariants: symmetric positive-definite; J·J⁻¹ = I within 1e-10.
class InertiaModel {
public:
    /// Diagonal inertia (the common spacecraft principal-axis case).
    static InertiaModel from_diagonal(const Vec3& principal);

    /// General symmetric positive-definite inertia.
    /// Throws invalid_input_error when J is not symmetric positive-definite.
    static InertiaModel from_matrix(const Mat3& J);

    const Mat3& matrix() const noexcept { return J_; }
    const Mat3& inverse() const noexcept { return J_inv_; }
    double lambda_min() const noexcept { return lambda_min_; }
    double lambda_max() const noexcept { return lambda_max_; }

    Vec3 apply(const Vec3& w) const { return J_ * w; }
    Vec3 apply_inverse(const Vec3& w) const { return J_inv_ * w; }

private:
    InertiaModel() = default;
    Mat3 J_{};
    Mat3 J_inv_{};
    double lambda_min_ = 0.0;
    double lambda_max_ = 0.0;
};

/// Periodic external disturbance torque:
///   d_i(t) = scale·(amp(i,0)·sin/cos(f(i,0)·ω·t) + amp(i,1)·sin/cos(f(i,1)·ω·t) + amp(i,2))
/// with the fixed trigonometric pattern
///   d1 = scale·(a00·sin(3ωt) + a01·cos(10ωt) + a02)
///   d2 = scale·(a10·sin(2ωt) + a11·cos(5ωt)  + a12)
///   d3 = scale·(a20·sin(10ωt) + a21·cos(4ωt) + a22)
/// Invariant: ‖d(t)‖ ≤ bound for all t (validated by dense sampling in
/// `validate_disturbance_bound`).
struct DisturbanceModel {
    double omega_dis = 0.01;   // rad/s
    double scale = 1e-4;       // N·m
    std::array<double, 9> amplitudes = {4.0, 3.0, -2.0,
                                        -1.5, 3.0, 2.0,
                                        3.0, -8.0, 2.0};
    double bound = 1.5e-3;     // N·m, known upper bound on ‖d(t)‖
};

/// Evaluate the disturbance torque at time t.
Vec3 disturbance_at(double t, const DisturbanceModel& model);

/// Densely samples ‖d(t)‖ over one full period and returns the observed
/// maximum. Throws infeasibility_error("disturbance bound") when a sample
/// exceeds model.bound.
double validate_disturbance_bound(const DisturbanceModel& model, int samples = 10000);

/// Spacecraft error state: attitude-error quaternion plus body rate.
/// The desired angular velocity is zero, so ω here is both the body rate and
/// the rate error.
struct SpacecraftState {
    UnitQuaternion q_e{};
    Vec3 omega{};
};

/// Time derivative of the error state.
struct StateRate {
    Vec3 qv_dot{};
    double q0_dot = 0.0;
    Vec3 omega_dot{};
};

/// Continuous-time rigid-body attitude-error model:
///   q̇v = F(q_e)·ω,  q̇0 = −½ qvᵀω,  J·ω̇ = −ω×(Jω) + u_act + d
StateRate state_derivative(const SpacecraftState& state, const Vec3& u_act,
                           const Vec3& d, const InertiaModel& inertia);

/// Actuation error between the live command and the held actuator value.
inline Vec3 input_error(const Vec3& u_cmd, const Vec3& u_held) {
    return u_cmd - u_held;
}

}  // namespace attctl
