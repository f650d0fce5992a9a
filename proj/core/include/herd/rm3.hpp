#pragma once

#include <array>
#include <span>

#include "herd/arena.hpp"
#include "herd/robot.hpp"

namespace herd {

// Sensing constants of the robot interface.
inline constexpr double kProximityRange = 0.03;  // m, surface-to-surface
inline constexpr double kCameraRange = 0.40;     // m, center-to-center
inline constexpr int kProxSensorCount = 8;
inline constexpr int kGroundSensorCount = 3;

// e-puck proximity sensor axes, body frame, radians. Index 0 is the
// front-left sensor at +17.5 degrees; the layout is mirror symmetric.
extern const std::array<double, kProxSensorCount> kProxSensorAngles;
inline constexpr double kProxConeHalfWidth = 0.2617993877991494;  // 15 deg

// Ground probes sit 3 cm ahead of the center at -30/0/+30 degrees.
extern const std::array<double, kGroundSensorCount> kGroundProbeAngles;
inline constexpr double kGroundProbeOffset = 0.03;

// Aggregated direction of one perceived LED color. The magnitude is fixed
// at 1.0 whenever the color is present.
struct ColorDirection {
  bool present = false;
  double angle = 0.0;  // body frame, [0, 2*pi)
  double magnitude = 0.0;
};

struct SensorReadings {
  std::array<double, kProxSensorCount> prox{};       // [0, 1]
  std::array<FloorColor, kGroundSensorCount> gnd{};  // left, center, right
  std::array<bool, kSignalColorCount> cam{};         // C, M, Y perceived
  std::array<ColorDirection, kSignalColorCount> v_color{};
};

struct Actuation {
  double v_left = 0.0;   // m/s
  double v_right = 0.0;  // m/s
  ColorSignal led = ColorSignal::kNone;
};

// Clamps wheel velocities into the actuator range; the LED passes through.
// Throws InvalidActuationError for non-finite velocities.
Actuation clamp_actuation(const Actuation& raw);

// Proximity readings for robot `self`: per sensor the strongest linear
// falloff 1 - d/range over robots within the +-15 degree cone and over
// walls sampled along the sensor axis; 0 when nothing is in range.
std::array<double, kProxSensorCount> sense_proximity(const ArenaSpec& arena,
                                                     std::span<const RobotBody> robots,
                                                     std::size_t self);

// Floor colors under the three ground probes; probes poking outside the
// arena read the default color.
std::array<FloorColor, kGroundSensorCount> sense_ground(const ArenaSpec& arena,
                                                        const RobotBody& robot);

// Omnidirectional camera: per color, whether any other robot within range
// emits it, and the body-frame direction of the summed unit bearings.
void sense_camera(std::span<const RobotBody> robots, std::size_t self,
                  std::array<bool, kSignalColorCount>& cam,
                  std::array<ColorDirection, kSignalColorCount>& v_color);

SensorReadings sense_all(const ArenaSpec& arena, std::span<const RobotBody> robots,
                         std::size_t self);

}  // namespace herd
