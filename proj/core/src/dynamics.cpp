#include "attctl/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "attctl/errors.hpp"

namespace attctl {

namespace {

// Eigenvalues of a symmetric 3×3 matrix via the trigonometric closed form.
void symmetric_eigenvalues(const Mat3& A, double out[3]) {
    const double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
    const double tr = A(0, 0) + A(1, 1) + A(2, 2);
    if (p1 == 0.0) {
        out[0] = A(0, 0);
        out[1] = A(1, 1);
        out[2] = A(2, 2);
        return;
    }
    const double q = tr / 3.0;
    const double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
                      (A(2, 2) - q) * (A(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 B = A;
    for (int i = 0; i < 3; ++i) B(i, i) -= q;
    B = B * (1.0 / p);
    const double detB =
        B(0, 0) * (B(1, 1) * B(2, 2) - B(1, 2) * B(2, 1)) -
        B(0, 1) * (B(1, 0) * B(2, 2) - B(1, 2) * B(2, 0)) +
        B(0, 2) * (B(1, 0) * B(2, 1) - B(1, 1) * B(2, 0));
    double r = detB / 2.0;
    r = std::fmin(1.0, std::fmax(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    out[0] = q + 2.0 * p * std::cos(phi);
    out[2] = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    out[1] = tr - out[0] - out[2];
}

Mat3 inverse_symmetric(const Mat3& A) {
    const double det =
        A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
        A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
        A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    Mat3 inv;
    inv(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / det;
    inv(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / det;
    inv(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / det;
    inv(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / det;
    inv(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / det;
    inv(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / det;
    inv(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / det;
    inv(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / det;
    inv(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / det;
    return inv;
}

}  // namespace

InertiaModel InertiaModel::from_diagonal(const Vec3& principal) {
    if (principal.x <= 0.0 || principal.y <= 0.0 || principal.z <= 0.0) {
        throw invalid_input_error("InertiaModel: principal moments must be positive");
    }
    InertiaModel m;
    m.J_ = Mat3::diag(principal);
    m.J_inv_ = Mat3::diag({1.0 / principal.x, 1.0 / principal.y, 1.0 / principal.z});
    m.lambda_min_ = std::fmin(principal.x, std::fmin(principal.y, principal.z));
    m.lambda_max_ = std::fmax(principal.x, std::fmax(principal.y, principal.z));
    return m;
}

InertiaModel InertiaModel::from_matrix(const Mat3& J) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::fabs(J(i, j) - J(j, i)) > 1e-12) {
                throw invalid_input_error("InertiaModel: matrix must be symmetric");
            }
    double ev[3];
    symmetric_eigenvalues(J, ev);
    const double lmin = std::fmin(ev[0], std::fmin(ev[1], ev[2]));
    const double lmax = std::fmax(ev[0], std::fmax(ev[1], ev[2]));
    if (lmin <= 0.0) {
        throw invalid_input_error("InertiaModel: matrix must be positive-definite");
    }
    InertiaModel m;
    m.J_ = J;
    m.J_inv_ = inverse_symmetric(J);
    m.lambda_min_ = lmin;
    m.lambda_max_ = lmax;
    return m;
}

Vec3 disturbance_at(double t, const DisturbanceModel& model) {
    const double w = model.omega_dis;
    const auto& a = model.amplitudes;
    return {model.scale * (a[0] * std::sin(3.0 * w * t) + a[1] * std::cos(10.0 * w * t) + a[2]),
            model.scale * (a[3] * std::sin(2.0 * w * t) + a[4] * std::cos(5.0 * w * t) + a[5]),
            model.scale * (a[6] * std::sin(10.0 * w * t) + a[7] * std::cos(4.0 * w * t) + a[8])};
}

double validate_disturbance_bound(const DisturbanceModel& model, int samples) {
    // Component frequencies are integer multiples of ω, so one full period of
    // the slowest harmonic (2π/ω) covers the whole signal.
    const double period = 2.0 * std::numbers::pi / model.omega_dis;
    double max_norm = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = period * static_cast<double>(i) / samples;
        max_norm = std::fmax(max_norm, norm(disturbance_at(t, model)));
    }
    if (max_norm > model.bound) {
        throw infeasibility_error("disturbance bound",
                                  "sampled ‖d(t)‖ exceeds the declared bound");
    }
    return max_norm;
}

StateRate state_derivative(const SpacecraftState& state, const Vec3& u_act,
                           const Vec3& d, const InertiaModel& inertia) {
    StateRate r;
    r.qv_dot = fs_apply(state.q_e, state.omega);
    r.q0_dot = -0.5 * dot(state.q_e.qv, state.omega);
    const Vec3 gyro = cross(state.omega, inertia.apply(state.omega));
    r.omega_dot = inertia.apply_inverse(u_act - gyro + d);
    return r;
}

}  // namespace attctl
