#pragma once

#include <cmath>

namespace shepherd {

// 2-D position/velocity/force, field units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

  Vec2& operator+=(Vec2 r) {
    x += r.x;
    y += r.y;
    return *this;
  }
  Vec2& operator-=(Vec2 r) {
    x -= r.x;
    y -= r.y;
    return *this;
  }
  Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
  constexpr double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  // Unit vector; zero vector when the norm is at or below eps.
  Vec2 normalized(double eps = 1e-12) const {
    double n = norm();
    if (n <= eps) return {};
    return {x / n, y / n};
  }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

}  // namespace shepherd
