#pragma once

#include <array>
#include <cmath>

namespace sdp {

/// A point (or vector) in 3D. z is the height h(p) of the point.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }

    Point3 cross(const Point3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Point3& a, const Point3& b) { return (b - a).norm(); }

inline Point3 lerp(const Point3& a, const Point3& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

/// Twice the signed area of the projected (xy) triangle abc.
inline double cross2(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (cx - ax) * (by - ay);
}

/// Area of triangle abc in 3D.
inline double triangle_area3(const Point3& a, const Point3& b, const Point3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

/// Area of the xy-projection of triangle abc (unsigned).
inline double triangle_area2(const Point3& a, const Point3& b, const Point3& c) {
    return 0.5 * std::abs(cross2(a.x, a.y, b.x, b.y, c.x, c.y));
}

/// Distance from vertex a to the line through b,c measured in 3D
/// (the altitude of the triangle from a).
inline double altitude3(const Point3& a, const Point3& b, const Point3& c) {
    double base = distance(b, c);
    if (base == 0.0) return 0.0;
    return 2.0 * triangle_area3(a, b, c) / base;
}

/// Barycentric coordinates of the xy point (px,py) with respect to the
/// projected triangle abc. Valid whenever the projection is non-degenerate.
inline std::array<double, 3> barycentric2(const Point3& a, const Point3& b, const Point3& c,
                                          double px, double py) {
    double det = cross2(a.x, a.y, b.x, b.y, c.x, c.y);
    double l0 = cross2(px, py, b.x, b.y, c.x, c.y) / det;
    double l1 = cross2(a.x, a.y, px, py, c.x, c.y) / det;
    double l2 = 1.0 - l0 - l1;
    return {l0, l1, l2};
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

}  // namespace sdp
