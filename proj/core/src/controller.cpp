#include "herd/controller.hpp"

#include <cmath>

namespace herd {

namespace {

struct SensorBasis {
  std::array<double, kProxSensorCount> cos_a;
  std::array<double, kProxSensorCount> sin_a;
  SensorBasis() {
    for (int i = 0; i < kProxSensorCount; ++i) {
      cos_a[i] = std::cos(kProxSensorAngles[i]);
      sin_a[i] = std::sin(kProxSensorAngles[i]);
    }
  }
};

const SensorBasis kBasis;

// Sensors 0, 1, 6, 7 face forward (|angle| <= 49 degrees).
constexpr std::array<int, 4> kFrontSensors = {0, 1, 6, 7};

}  // namespace

Actuation steer_toward(double body_angle, double speed, ColorSignal led) {
  const double err = wrap_angle_pi(body_angle);
  const double omega = kSteerGain * err;
  const double v = speed * std::max(0.0, std::cos(err));
  Actuation a;
  a.v_left = v - omega * kAxleLength / 2.0;
  a.v_right = v + omega * kAxleLength / 2.0;
  a.led = led;
  return a;
}

void add_proximity_repulsion(const std::array<double, kProxSensorCount>& prox, double& v_left,
                             double& v_right) {
  double rx = 0.0;
  double ry = 0.0;
  for (int i = 0; i < kProxSensorCount; ++i) {
    rx += prox[i] * kBasis.cos_a[i];
    ry += prox[i] * kBasis.sin_a[i];
  }
  if (rx == 0.0 && ry == 0.0) return;
  double omega = -kAvoidTurnGain * ry;
  if (std::abs(ry) < 0.05 && rx > 0.3) omega -= kAvoidTurnGain * rx;
  const double dv = -kMaxWheelSpeed * std::max(0.0, rx);
  v_left += dv - omega * kAxleLength / 2.0;
  v_right += dv + omega * kAxleLength / 2.0;
}

bool front_blocked(const std::array<double, kProxSensorCount>& prox) {
  for (int i : kFrontSensors) {
    if (prox[i] > kObstacleThreshold) return true;
  }
  return false;
}

}  // namespace herd
