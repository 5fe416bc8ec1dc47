#include "attctl/controller.hpp"

#include <cmath>

#include "attctl/errors.hpp"

namespace attctl {

void AlphaHistory::push(double t, const Vec3& alpha) {
    if (size_ > 0 && t <= time_back(0)) {
        throw contract_violation_error("AlphaHistory: timestamps must be strictly increasing");
    }
    t_[head_] = t;
    a_[head_] = alpha;
    head_ = (head_ + 1) % kCapacity;
    if (size_ < kCapacity) ++size_;
}

const Vec3& AlphaHistory::alpha_back(std::size_t age) const {
    if (age >= size_) {
        throw contract_violation_error("AlphaHistory: not enough samples");
    }
    return a_[(head_ + kCapacity - 1 - age) % kCapacity];
}

double AlphaHistory::time_back(std::size_t age) const {
    if (age >= size_) {
        throw contract_violation_error("AlphaHistory: not enough samples");
    }
    return t_[(head_ + kCapacity - 1 - age) % kCapacity];
}

Vec3 virtual_control(const UnitQuaternion& q_e, const Vec3& eps,
                     const FunnelMatrices& funnel, const ControllerParams& params) {
    const double q0_abs = std::fabs(q_e.q0);
    if (q0_abs <= params.q0_min) {
        throw singularity_error("virtual_control: |q0| at or below the singularity guard");
    }
    // Ψ⁻¹·tanh(γ·ε) = (ρ_i · tanh(γ ε_i)) componentwise.
    const Vec3 shaped = {funnel.rho.x * std::tanh(params.gamma * eps.x),
                         funnel.rho.y * std::tanh(params.gamma * eps.y),
                         funnel.rho.z * std::tanh(params.gamma * eps.z)};
    const Vec3 raw =
        fs_inverse_apply(q_e, shaped, params.q0_min) * (-(q0_abs / 2.0) * params.k_m * params.m_omega);
    const double budget =
        params.k_m * params.m_omega * std::fmax(funnel.rho.x, std::fmax(funnel.rho.y, funnel.rho.z));
    const double n = norm(raw);
    return (n > budget) ? raw * (budget / n) : raw;
}

Vec3 alpha_derivative(const AlphaHistory& hist) {
    if (hist.size() < 2) return {};
    const double dt = hist.time_back(0) - hist.time_back(1);
    return (hist.alpha_back(0) - hist.alpha_back(1)) * (1.0 / dt);
}

Vec3 disturbance_compensation(const Vec3& z2, const ControllerParams& params) {
    const double mag = params.dist_comp_mag;
    return {mag * std::tanh(z2.x / params.p),
            mag * std::tanh(z2.y / params.p),
            mag * std::tanh(z2.z / params.p)};
}

Vec3 pq_term(const UnitQuaternion& q_e, const Vec3& eps,
             const FunnelMatrices& funnel, const BlfParams& blf) {
    const double ee = dot(eps, eps);
    const Vec3 fe = fs_apply(q_e, eps);
    return (funnel.psi * fe) * (blf.k1 * std::tanh(ee / blf.f1));
}

Vec3 control_command(const SpacecraftState& state, const Vec3& alpha,
                     const Vec3& alpha_dot, const UnitQuaternion& q_e,
                     const Vec3& eps, const FunnelMatrices& funnel,
                     const InertiaModel& inertia, const ControllerParams& params,
                     const BlfParams& blf) {
    const Vec3 z2 = state.omega - alpha;
    const Vec3 gyro = cross(state.omega, inertia.apply(state.omega));
    const Vec3 d_hat = disturbance_compensation(z2, params);
    const Vec3 p_q = pq_term(q_e, eps, funnel, blf);
    return (((gyro - z2 * params.k2) - d_hat) - p_q) + inertia.apply(alpha_dot);
}

Vec3 saturate_command(const Vec3& u, double u_max, std::array<bool, 3>& saturated) {
    Vec3 out = u;
    saturated = {false, false, false};
    double* c[3] = {&out.x, &out.y, &out.z};
    for (int i = 0; i < 3; ++i) {
        if (*c[i] > u_max) {
            *c[i] = u_max;
            saturated[static_cast<size_t>(i)] = true;
        } else if (*c[i] < -u_max) {
            *c[i] = -u_max;
            saturated[static_cast<size_t>(i)] = true;
        }
    }
    return out;
}

}  // namespace attctl
