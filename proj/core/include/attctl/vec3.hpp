#pragma once

#include <array>
#include <cmath>

namespace attctl {

/// Dense 3-vector. Units are context dependent (rad/s for angular velocity,
/// N·m for torque). Value type, no invariants beyond finiteness by use.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double max_abs_component(const Vec3& v) {
    return std::fmax(std::fabs(v.x), std::fmax(std::fabs(v.y), std::fabs(v.z)));
}

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Componentwise tanh — recurring pattern in the control laws.
inline Vec3 tanh_componentwise(const Vec3& v) {
    return {std::tanh(v.x), std::tanh(v.y), std::tanh(v.z)};
}

/// Dense 3×3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};  // row-major

    constexpr double operator()(int r, int c) const { return m[3 * r + c]; }
    constexpr double& operator()(int r, int c) { return m[3 * r + c]; }

    static constexpr Mat3 identity() {
        Mat3 a;
        a.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return a;
    }

    /// Diagonal matrix spanned from a vector: entry (i,i) = a_i.
    static constexpr Mat3 diag(const Vec3& a) {
        Mat3 d;
        d.m = {a.x, 0, 0, 0, a.y, 0, 0, 0, a.z};
        return d;
    }

    constexpr Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    constexpr Mat3 operator*(const Mat3& b) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    constexpr Mat3 operator+(const Mat3& b) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + b.m[i];
        return r;
    }

    constexpr Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    constexpr Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
};

/// Skew-symmetric matrix A with A·b = a×b for all b.
constexpr Mat3 cross_matrix(const Vec3& a) {
    Mat3 s;
    s.m = {0, -a.z, a.y, a.z, 0, -a.x, -a.y, a.x, 0};
    return s;
}

}  // namespace attctl
