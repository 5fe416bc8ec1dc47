#pragma once

#include "attctl/vec3.hpp"

namespace attctl {

/// Unit quaternion, scalar-last storage: (qv | q0). Hamilton product
/// convention. Used for the attitude error q_e = q_d^{-1} ⊗ q_s and for the
/// source/desired attitudes.
///
/// Invariant: |qv·qv + q0² − 1| ≤ 1e-9 after every operation; operations
/// renormalize when the drift exceeds 1e-12.
struct UnitQuaternion {
    Vec3 qv{};       // vector part
    double q0 = 1.0; // scalar part

    double norm() const { return std::sqrt(dot(qv, qv) + q0 * q0); }
};

inline constexpr double kQuatRenormThreshold = 1e-12;
inline constexpr double kQuatUnitTolerance = 1e-9;

/// Renormalize in place when drift exceeds the threshold.
void renormalize(UnitQuaternion& q);

/// Hamilton product a ⊗ b (scalar-last components).
UnitQuaternion quat_product(const UnitQuaternion& a, const UnitQuaternion& b);

/// Conjugate (inverse for unit quaternions).
inline UnitQuaternion quat_conjugate(const UnitQuaternion& q) {
    return {-q.qv, q.q0};
}

/// Error quaternion q_e = q_d^{-1} ⊗ q_s, scalar part sign-normalized so the
/// result has q0 ≥ 0. The sign flip is applied here, once, at composition
/// time; simulation never flips mid-run.
///
/// Throws invalid_input_error if either input is non-unit beyond tolerance.
UnitQuaternion quat_error(const UnitQuaternion& q_s, const UnitQuaternion& q_d);

/// Attitude-error kinematics Jacobian F = ½(q0·I + [qv]×), so q̇v = F·ω.
Mat3 jacobian_Fs(const UnitQuaternion& q_e);

/// Apply F to a vector without forming the matrix: F·w = ½(q0·w + qv×w).
inline Vec3 fs_apply(const UnitQuaternion& q_e, const Vec3& w) {
    return (w * q_e.q0 + cross(q_e.qv, w)) * 0.5;
}

/// Solve F·x = w exactly for a unit quaternion:
/// x = 2(q0·w − qv×w + qv(qv·w)/q0). The inverse exists when |q0| > 0 with
/// ‖F^{-1}‖ = 2/|q0|.
///
/// Throws singularity_error when |q0| ≤ q0_min.
Vec3 fs_inverse_apply(const UnitQuaternion& q_e, const Vec3& w, double q0_min);

/// Explicit inverse matrix of F (same guard as fs_inverse_apply).
Mat3 jacobian_Fs_inverse(const UnitQuaternion& q_e, double q0_min);

}  // namespace attctl
