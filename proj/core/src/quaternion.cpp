#include "attctl/quaternion.hpp"

#include <cmath>

#include "attctl/errors.hpp"

namespace attctl {

void renormalize(UnitQuaternion& q) {
    const double n2 = dot(q.qv, q.qv) + q.q0 * q.q0;
    if (std::fabs(n2 - 1.0) > kQuatRenormThreshold) {
        const double n = std::sqrt(n2);
        q.qv = q.qv / n;
        q.q0 /= n;
    }
}

UnitQuaternion quat_product(const UnitQuaternion& a, const UnitQuaternion& b) {
    UnitQuaternion r;
    r.qv = b.qv * a.q0 + a.qv * b.q0 + cross(a.qv, b.qv);
    r.q0 = a.q0 * b.q0 - dot(a.qv, b.qv);
    renormalize(r);
    return r;
}

UnitQuaternion quat_error(const UnitQuaternion& q_s, const UnitQuaternion& q_d) {
    if (std::fabs(q_s.norm() - 1.0) > kQuatUnitTolerance ||
        std::fabs(q_d.norm() - 1.0) > kQuatUnitTolerance) {
        throw invalid_input_error("quat_error: inputs must be unit quaternions");
    }
    UnitQuaternion e = quat_product(quat_conjugate(q_d), q_s);
    if (e.q0 < 0.0) {
        e.qv = -e.qv;
        e.q0 = -e.q0;
    }
    return e;
}

Mat3 jacobian_Fs(const UnitQuaternion& q_e) {
    return (Mat3::identity() * q_e.q0 + cross_matrix(q_e.qv)) * 0.5;
}

Vec3 fs_inverse_apply(const UnitQuaternion& q_e, const Vec3& w, double q0_min) {
    const double q0 = q_e.q0;
    if (std::fabs(q0) <= q0_min) {
        throw singularity_error("fs_inverse_apply: |q0| at or below the singularity guard");
    }
    const Vec3 t1 = w * q0;
    const Vec3 t2 = cross(q_e.qv, w);
    const Vec3 t3 = q_e.qv * (dot(q_e.qv, w) / q0);
    return (t1 - t2 + t3) * 2.0;
}

Mat3 jacobian_Fs_inverse(const UnitQuaternion& q_e, double q0_min) {
    const double q0 = q_e.q0;
    if (std::fabs(q0) <= q0_min) {
        throw singularity_error("jacobian_Fs_inverse: |q0| at or below the singularity guard");
    }
    // F^{-1} = 2(q0·I − [qv]× + qv qvᵀ / q0) for a unit quaternion.
    Mat3 outer;
    const Vec3& v = q_e.qv;
    outer.m = {v.x * v.x, v.x * v.y, v.x * v.z,
               v.y * v.x, v.y * v.y, v.y * v.z,
               v.z * v.x, v.z * v.y, v.z * v.z};
    const Mat3 skew = cross_matrix(v);
    return (Mat3::identity() * q0 + skew * (-1.0) + outer * (1.0 / q0)) * 2.0;
}

}  // namespace attctl
