#pragma once

#include <array>
#include <cstddef>

#include "attctl/dynamics.hpp"
#include "attctl/performance.hpp"
#include "attctl/quaternion.hpp"
#include "attctl/vec3.hpp"

namespace attctl {

/// Gains and guards of the two-layer backstepping controller.
/// All strictly positive; tanh_dominance_margin(k_m, gamma, k_u) must be ≥ 0.
struct ControllerParams {
    double k_m = 1.6;          // virtual-law magnitude gain
    double gamma = 62.0;       // virtual-law tanh sharpness
    double m_omega = 0.0205;   // rad/s, angular-velocity budget factor
    double k_u = 1.5;          // practical bound on |ε_i| during transients
    double k2 = 2.5;           // rate-loop gain
    double dist_comp_mag = 1e-4;  // N·m, disturbance-compensation magnitude
    double p = 4e-6;           // compensation tanh scale (shared across axes)
    double q0_min = 1e-6;      // singularity guard on |q0|
    double u_max = 0.05;       // N·m, componentwise actuator saturation
};

/// Fixed-capacity ring buffer of timestamped virtual-control samples,
/// backing the finite-difference derivative. Timestamps must be strictly
/// increasing (contract_violation_error otherwise).
class AlphaHistory {
public:
    void push(double t, const Vec3& alpha);
    std::size_t size() const noexcept { return size_; }
    /// newest = back(0), previous = back(1), ...
    const Vec3& alpha_back(std::size_t age) const;
    double time_back(std::size_t age) const;

private:
    static constexpr std::size_t kCapacity = 4;
    std::array<double, kCapacity> t_{};
    std::array<Vec3, kCapacity> a_{};
    std::size_t head_ = 0;  // next write slot
    std::size_t size_ = 0;
};

/// Virtual control law (desired angular velocity for the attitude layer):
///   α = −(|q0|/2)·k_m·M_ω·F⁻¹·Ψ⁻¹·tanh(γ·ε)
/// then norm-clamped to k_m·M_ω·max_i ρ_i(t) so the documented budget
/// ‖α‖ ≤ k_m·M_ω·(ρ_i)_max holds exactly.
/// Throws singularity_error when |q0| ≤ q0_min.
Vec3 virtual_control(const UnitQuaternion& q_e, const Vec3& eps,
                     const FunnelMatrices& funnel, const ControllerParams& params);

/// Backward finite difference over the two newest history samples;
/// zero when only one sample exists.
Vec3 alpha_derivative(const AlphaHistory& hist);

/// Rough disturbance compensation d̂ = mag·tanh(z2/p) (componentwise).
/// |d̂_i| < mag and sign(d̂_i) = sign(z2_i).
Vec3 disturbance_compensation(const Vec3& z2, const ControllerParams& params);

/// Barrier-coupling feedthrough P = k1·tanh(εᵀε/F1)·Ψ·F·ε.
/// ‖P‖ ≤ √3·k1·k_u/(ρ_i)_min when ‖ε‖ ≤ √3·k_u.
Vec3 pq_term(const UnitQuaternion& q_e, const Vec3& eps,
             const FunnelMatrices& funnel, const BlfParams& blf);

/// Unsaturated actual control law:
///   u = ω×(Jω) − K2·z2 + J·α̇ − d̂ − P,  z2 = ω − α
/// The simulation saturates componentwise at ±u_max before holding.
Vec3 control_command(const SpacecraftState& state, const Vec3& alpha,
                     const Vec3& alpha_dot, const UnitQuaternion& q_e,
                     const Vec3& eps, const FunnelMatrices& funnel,
                     const InertiaModel& inertia, const ControllerParams& params,
                     const BlfParams& blf);

/// Componentwise clamp to ±u_max. `saturated[i]` reports per-axis clipping.
Vec3 saturate_command(const Vec3& u, double u_max, std::array<bool, 3>& saturated);

}  // namespace attctl
