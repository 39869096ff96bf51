#pragma once

#include <array>
#include <cmath>

namespace wct {

// Small fixed vector used for points and directions in 2D and 3D.
// 2D quantities keep z == 0.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }

    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
};

inline constexpr Vec3 operator*(double c, const Vec3& v) { return v * c; }

// Unit vector at angle phi on S^1.
inline Vec3 unit2(double phi) { return {std::cos(phi), std::sin(phi), 0.0}; }

// Rotate a 2D vector by angle a.
inline Vec3 rot2(const Vec3& v, double a) {
    double c = std::cos(a), s = std::sin(a);
    return {c * v.x - s * v.y, s * v.x + c * v.y, 0.0};
}

// Orthonormal pair spanning the plane perpendicular to a unit vector b in 3D.
inline std::array<Vec3, 2> perp_basis(const Vec3& b) {
    Vec3 seed = std::abs(b.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = b.cross(seed).normalized();
    Vec3 e2 = b.cross(e1);
    return {e1, e2};
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace wct
