#pragma once

#include <cmath>
#include <numbers>

namespace herd {

inline constexpr double kTau = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm_sq()); }
  double angle() const { return std::atan2(y, x); }

  bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Wraps an angle into [0, 2*pi).
inline double wrap_angle_2pi(double a) {
  a = std::fmod(a, kTau);
  if (a < 0.0) a += kTau;
  if (a >= kTau) a = 0.0;  // fmod result can round up to 2*pi
  return a;
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle_pi(double a) {
  a = std::fmod(a, kTau);
  if (a > std::numbers::pi) {
    a -= kTau;
  } else if (a <= -std::numbers::pi) {
    a += kTau;
  }
  return a;
}

}  // namespace herd
