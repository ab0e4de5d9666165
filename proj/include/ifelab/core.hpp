#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ifelab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        double n = norm();
        return {x / n, y / n};
    }
    // 90 degree counterclockwise rotation.
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Rect {
    double x0 = 0.0, y0 = 0.0;
    double width = 1.0, height = 1.0;

    Vec2 corner() const { return {x0, y0}; }
    bool degenerate() const { return width <= 0.0 || height <= 0.0; }
};

enum class CellType { Triangular, Rectangular };
enum class Family { CR, RQ1 };
enum class PartitionMode { Curve, Line };
enum class FluxMode { CurveMidpoint, LineMidpoint };

// Error types. All derive from std::runtime_error so callers can be coarse.
struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& m) : std::runtime_error(m) {}
};
struct RootFindFailure : std::runtime_error {
    explicit RootFindFailure(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateGeometry : std::runtime_error {
    explicit DegenerateGeometry(const std::string& m) : std::runtime_error(m) {}
};
struct SingularBasis : std::runtime_error {
    explicit SingularBasis(const std::string& m) : std::runtime_error(m) {}
};
struct NearSingular : std::runtime_error {
    explicit NearSingular(const std::string& m) : std::runtime_error(m) {}
};
struct OpenBoundary : std::runtime_error {
    explicit OpenBoundary(const std::string& m) : std::runtime_error(m) {}
};
struct AssemblyError : std::runtime_error {
    explicit AssemblyError(const std::string& m) : std::runtime_error(m) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace ifelab
