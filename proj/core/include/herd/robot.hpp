#pragma once

#include <cstdint>

#include "herd/color.hpp"
#include "herd/vec2.hpp"

namespace herd {

// e-puck body dimensions.
inline constexpr double kRobotRadius = 0.035;   // m
inline constexpr double kAxleLength = 0.053;    // m
inline constexpr double kMaxWheelSpeed = 0.12;  // m/s
inline constexpr double kControlPeriod = 0.1;   // s per control cycle

enum class RobotKind : std::uint8_t { kShepherd = 0, kSheep };

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // [0, 2*pi)

  Vec2 position() const { return {x, y}; }
};

struct RobotBody {
  RobotKind kind = RobotKind::kShepherd;
  double radius = kRobotRadius;
  double axle_length = kAxleLength;
  Pose pose;
  ColorSignal led = ColorSignal::kNone;
  bool halted = false;  // once set, pose and led stay frozen
};

}  // namespace herd
