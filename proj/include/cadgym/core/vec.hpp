#pragma once

#include <array>
#include <cmath>
#include <limits>

namespace cadgym {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const = default;

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Vec3& o) const = default;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline double squared_distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }
inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Column-major 3x3 rotation/linear map. m[r][c] is row r, column c.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Mat3 identity() { return Mat3{}; }

    static Mat3 rot_x(double rad) {
        const double c = std::cos(rad), s = std::sin(rad);
        return Mat3{{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
    }
    static Mat3 rot_y(double rad) {
        const double c = std::cos(rad), s = std::sin(rad);
        return Mat3{{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
    }
    static Mat3 rot_z(double rad) {
        const double c = std::cos(rad), s = std::sin(rad);
        return Mat3{{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
    }

    /// Intrinsic Z-Y-X rotation from degrees: R = Rz(a) * Ry(b) * Rx(c).
    static Mat3 from_euler_zyx_deg(double z_deg, double y_deg, double x_deg) {
        constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
        return rot_z(z_deg * kDegToRad) * rot_y(y_deg * kDegToRad) * rot_x(x_deg * kDegToRad);
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    double determinant() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    /// Orthonormal with determinant +1, within tol.
    bool is_rotation(double tol = 1e-9) const {
        const Mat3 rtr = transposed() * (*this);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(rtr.m[i][j] - want) > tol) return false;
            }
        return std::abs(determinant() - 1.0) <= tol;
    }
};

struct Aabb2 {
    Vec2 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    bool empty() const { return min.x > max.x || min.y > max.y; }
    void expand(const Vec2& p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
    }
};

struct Aabb3 {
    Vec3 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    Vec3 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};

    bool empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }

    void expand(const Vec3& p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        min.z = std::min(min.z, p.z);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
        max.z = std::max(max.z, p.z);
    }

    void merge(const Aabb3& o) {
        if (o.empty()) return;
        expand(o.min);
        expand(o.max);
    }

    Aabb3 intersection(const Aabb3& o) const {
        Aabb3 r;
        if (empty() || o.empty()) return r;
        r.min = {std::max(min.x, o.min.x), std::max(min.y, o.min.y), std::max(min.z, o.min.z)};
        r.max = {std::min(max.x, o.max.x), std::min(max.y, o.max.y), std::min(max.z, o.max.z)};
        return r;
    }

    Vec3 extent() const { return empty() ? Vec3{} : max - min; }
    Vec3 center() const { return empty() ? Vec3{} : (min + max) * 0.5; }

    Aabb3 inflated(double pad) const {
        Aabb3 r = *this;
        if (r.empty()) return r;
        r.min = r.min - Vec3{pad, pad, pad};
        r.max = r.max + Vec3{pad, pad, pad};
        return r;
    }
};

}  // namespace cadgym
