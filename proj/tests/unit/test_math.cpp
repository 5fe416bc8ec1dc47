#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "attctl/errors.hpp"
#include "attctl/quaternion.hpp"
#include "attctl/vec3.hpp"
#include "oracles.hpp"

using namespace attctl;

namespace {

UnitQuaternion random_unit_quat(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    UnitQuaternion q{{n(rng), n(rng), n(rng)}, n(rng)};
    const double norm = q.norm();
    q.qv = q.qv * (1.0 / norm);
    q.q0 /= norm;
    return q;
}

}  // namespace

TEST_CASE("cross matrix reproduces the cross product and is antisymmetric") {
    const Vec3 v{1.0, -2.0, 3.0};
    const Vec3 w{-0.5, 4.0, 2.0};
    const Mat3 vx = cross_matrix(v);
    const Vec3 a = vx * w;
    const Vec3 b = cross(v, w);
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-15));
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-15));
    CHECK(a.z == doctest::Approx(b.z).epsilon(1e-15));
    const Mat3 vxt = vx.transpose();
    for (int i = 0; i < 9; ++i) CHECK(vx.m[i] == -vxt.m[i]);
    // v × v = 0
    const Vec3 z = vx * v;
    CHECK(norm(z) == 0.0);
}

TEST_CASE("quaternion product matches the naive 16-multiplication oracle") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const UnitQuaternion a = random_unit_quat(rng);
        const UnitQuaternion b = random_unit_quat(rng);
        const auto expect = oracles::oracle_quaternion_product(
            {a.qv.x, a.qv.y, a.qv.z, a.q0}, {b.qv.x, b.qv.y, b.qv.z, b.q0});
        const UnitQuaternion got = quat_product(a, b);
        CHECK(got.qv.x == doctest::Approx(expect[0]).epsilon(1e-14));
        CHECK(got.qv.y == doctest::Approx(expect[1]).epsilon(1e-14));
        CHECK(got.qv.z == doctest::Approx(expect[2]).epsilon(1e-14));
        CHECK(got.q0 == doctest::Approx(expect[3]).epsilon(1e-14));
    }
}

TEST_CASE("oracle sanity: identity and inverse products") {
    const std::array<double, 4> q{0.1, 0.2, -0.3, std::sqrt(1.0 - 0.14)};
    const std::array<double, 4> id{0.0, 0.0, 0.0, 1.0};
    const auto iq = oracles::oracle_quaternion_product(id, q);
    for (int i = 0; i < 4; ++i) CHECK(iq[i] == doctest::Approx(q[i]).epsilon(1e-15));
    const auto qqinv = oracles::oracle_quaternion_product(q, oracles::oracle_quaternion_conjugate(q));
    CHECK(qqinv[0] == doctest::Approx(0.0));
    CHECK(qqinv[1] == doctest::Approx(0.0));
    CHECK(qqinv[2] == doctest::Approx(0.0));
    CHECK(qqinv[3] == doctest::Approx(1.0));
}

TEST_CASE("unit-norm closure under products (property)") {
    std::mt19937_64 rng(7);
    UnitQuaternion acc{{0, 0, 0}, 1.0};
    for (int i = 0; i < 2000; ++i) {
        acc = quat_product(acc, random_unit_quat(rng));
        CHECK(std::fabs(acc.norm() - 1.0) <= kQuatUnitTolerance);
    }
}

TEST_CASE("initial error quaternion matches the golden oracle value") {
    std::ifstream golden(std::string(ATTCTL_TEST_DATA_DIR) + "/initial_error_quaternion.txt");
    REQUIRE(golden.good());
    std::string line;
    double gx = 0, gy = 0, gz = 0, gw = 0;
    while (std::getline(golden, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        REQUIRE((ss >> gx >> gy >> gz >> gw));
        break;
    }

    UnitQuaternion q_s{{0.5175, 0.3881, 0.4200}, 0.6366};
    UnitQuaternion q_d{{0.2, -0.5, -0.5}, -0.6782};
    renormalize(q_s);
    renormalize(q_d);
    const UnitQuaternion q_e = quat_error(q_s, q_d);
    CHECK(q_e.qv.x == doctest::Approx(gx).epsilon(1e-12));
    CHECK(q_e.qv.y == doctest::Approx(gy).epsilon(1e-12));
    CHECK(q_e.qv.z == doctest::Approx(gz).epsilon(1e-12));
    CHECK(q_e.q0 == doctest::Approx(gw).epsilon(1e-12));
    CHECK(q_e.q0 >= 0.0);  // sign-normalized once, at composition time
}

TEST_CASE("error of a quaternion against itself is the identity") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const UnitQuaternion q = random_unit_quat(rng);
        const UnitQuaternion e = quat_error(q, q);
        CHECK(norm(e.qv) <= 1e-12);
        CHECK(e.q0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("quat_error rejects non-unit inputs") {
    const UnitQuaternion bad{{1.0, 1.0, 1.0}, 1.0};
    const UnitQuaternion good{{0, 0, 0}, 1.0};
    CHECK_THROWS_AS(quat_error(bad, good), invalid_input_error);
    CHECK_THROWS_AS(quat_error(good, bad), invalid_input_error);
}

TEST_CASE("kinematics Jacobian inverse: F_inv * F = I to 1e-10") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        UnitQuaternion q = random_unit_quat(rng);
        if (std::fabs(q.q0) < 1e-3) continue;
        const Mat3 F = jacobian_Fs(q);
        const Mat3 Finv = jacobian_Fs_inverse(q, 1e-6);
        const Mat3 P = Finv * F;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const double expect = r == c ? 1.0 : 0.0;
                CHECK(std::fabs(P.m[3 * r + c] - expect) <= 1e-10);
            }
        }
    }
}

TEST_CASE("matrix-free apply agrees with explicit Jacobians") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        UnitQuaternion q = random_unit_quat(rng);
        if (std::fabs(q.q0) < 1e-3) continue;
        const Vec3 w{n(rng), n(rng), n(rng)};
        const Vec3 a = fs_apply(q, w);
        const Vec3 b = jacobian_Fs(q) * w;
        CHECK(norm(a - b) <= 1e-13);
        // round trip through the exact inverse
        const Vec3 back = fs_inverse_apply(q, a, 1e-6);
        CHECK(norm(back - w) <= 1e-9 * (1.0 + norm(w)));
    }
}

TEST_CASE("inverse Jacobian gain is 2/|q0|: equals 4 at q0 = 0.5") {
    // F has singular values q0/2 (along qv) and 1/2 (orthogonal), so the
    // inverse attains 2/|q0| along the vector part.
    const double q0 = 0.5;
    const double s = std::sqrt(1.0 - q0 * q0);
    const UnitQuaternion q{{s / std::sqrt(3.0), s / std::sqrt(3.0), s / std::sqrt(3.0)}, q0};
    const Vec3 dir = q.qv * (1.0 / norm(q.qv));
    const Vec3 out = fs_inverse_apply(q, dir, 1e-6);
    CHECK(norm(out) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("inverse Jacobian refuses a vanished scalar part") {
    const UnitQuaternion q{{1.0, 0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(fs_inverse_apply(q, Vec3{1, 0, 0}, 1e-6), singularity_error);
    CHECK_THROWS_AS(jacobian_Fs_inverse(q, 1e-6), singularity_error);
}
