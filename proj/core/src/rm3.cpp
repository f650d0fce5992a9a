#include "herd/rm3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "herd/errors.hpp"

namespace herd {

namespace {

constexpr double deg(double d) { return d * std::numbers::pi / 180.0; }

const double kConeCos = std::cos(kProxConeHalfWidth);

}  // namespace

const std::array<double, kProxSensorCount> kProxSensorAngles = {
    deg(17.5), deg(49.0), deg(90.0), deg(150.0),
    deg(210.0), deg(270.0), deg(311.0), deg(342.5)};

const std::array<double, kGroundSensorCount> kGroundProbeAngles = {deg(-30.0), 0.0, deg(30.0)};

Actuation clamp_actuation(const Actuation& raw) {
  if (std::isnan(raw.v_left) || std::isnan(raw.v_right)) {
    throw InvalidActuationError("NaN wheel velocity");
  }
  Actuation out = raw;
  out.v_left = std::clamp(out.v_left, -kMaxWheelSpeed, kMaxWheelSpeed);
  out.v_right = std::clamp(out.v_right, -kMaxWheelSpeed, kMaxWheelSpeed);
  return out;
}

std::array<double, kProxSensorCount> sense_proximity(const ArenaSpec& arena,
                                                     std::span<const RobotBody> robots,
                                                     std::size_t self) {
  std::array<double, kProxSensorCount> prox{};
  const RobotBody& me = robots[self];
  const Vec2 pos = me.pose.position();
  const double ch = std::cos(me.pose.heading);
  const double sh = std::sin(me.pose.heading);

  // World-frame sensor axes, rotated once per call.
  std::array<Vec2, kProxSensorCount> axes;
  for (int i = 0; i < kProxSensorCount; ++i) {
    const double ca = std::cos(kProxSensorAngles[i]);
    const double sa = std::sin(kProxSensorAngles[i]);
    axes[i] = {ca * ch - sa * sh, ca * sh + sa * ch};
  }

  // Other robots: surface distance within range and center bearing within
  // the acceptance cone.
  for (std::size_t j = 0; j < robots.size(); ++j) {
    if (j == self) continue;
    const double reach = me.radius + robots[j].radius + kProximityRange;
    const Vec2 d = robots[j].pose.position() - pos;
    const double dist_sq = d.norm_sq();
    if (dist_sq >= reach * reach || dist_sq < 1e-24) continue;
    const double dist = std::sqrt(dist_sq);
    const double surface = std::max(0.0, dist - me.radius - robots[j].radius);
    if (surface >= kProximityRange) continue;
    const Vec2 dir = d * (1.0 / dist);
    const double reading = 1.0 - surface / kProximityRange;
    for (int i = 0; i < kProxSensorCount; ++i) {
      if (dir.dot(axes[i]) >= kConeCos) prox[i] = std::max(prox[i], reading);
    }
  }

  // Walls: cast each sensor axis to the nearest edge line. Skip entirely
  // when the whole body is farther than the range from every edge.
  double min_wall = std::numeric_limits<double>::infinity();
  std::array<double, 8> edge_gap;
  for (int k = 0; k < 8; ++k) {
    edge_gap[k] = arena.apothem - pos.dot(arena.edge_normals[k]);
    min_wall = std::min(min_wall, edge_gap[k]);
  }
  if (min_wall - me.radius < kProximityRange) {
    for (int i = 0; i < kProxSensorCount; ++i) {
      double t_exit = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 8; ++k) {
        const double denom = axes[i].dot(arena.edge_normals[k]);
        if (denom > 1e-12) t_exit = std::min(t_exit, edge_gap[k] / denom);
      }
      const double surface = std::max(0.0, t_exit - me.radius);
      if (surface < kProximityRange) {
        prox[i] = std::max(prox[i], 1.0 - surface / kProximityRange);
      }
    }
  }
  return prox;
}

std::array<FloorColor, kGroundSensorCount> sense_ground(const ArenaSpec& arena,
                                                        const RobotBody& robot) {
  std::array<FloorColor, kGroundSensorCount> gnd{};
  const Vec2 pos = robot.pose.position();
  for (int i = 0; i < kGroundSensorCount; ++i) {
    const Vec2 probe = pos + unit_vector(robot.pose.heading + kGroundProbeAngles[i]) *
                                 kGroundProbeOffset;
    gnd[i] = point_in_arena(arena, probe) ? floor_color_at(arena, probe) : arena.default_color;
  }
  return gnd;
}

void sense_camera(std::span<const RobotBody> robots, std::size_t self,
                  std::array<bool, kSignalColorCount>& cam,
                  std::array<ColorDirection, kSignalColorCount>& v_color) {
  cam = {false, false, false};
  std::array<Vec2, kSignalColorCount> sums{};
  const RobotBody& me = robots[self];
  const Vec2 pos = me.pose.position();

  for (std::size_t j = 0; j < robots.size(); ++j) {
    if (j == self) continue;
    const int c = signal_index(robots[j].led);
    if (c < 0) continue;
    const Vec2 d = robots[j].pose.position() - pos;
    const double dist_sq = d.norm_sq();
    if (dist_sq > kCameraRange * kCameraRange || dist_sq < 1e-24) continue;
    cam[c] = true;
    sums[c] += d * (1.0 / std::sqrt(dist_sq));
  }

  for (int c = 0; c < kSignalColorCount; ++c) {
    if (!cam[c]) {
      v_color[c] = {};
      continue;
    }
    double angle = 0.0;  // degenerate tie: opposing bearings cancel out
    if (sums[c].norm_sq() >= 1e-24) {
      angle = wrap_angle_2pi(sums[c].angle() - me.pose.heading);
    }
    v_color[c] = {true, angle, 1.0};
  }
}

SensorReadings sense_all(const ArenaSpec& arena, std::span<const RobotBody> robots,
                         std::size_t self) {
  SensorReadings r;
  r.prox = sense_proximity(arena, robots, self);
  r.gnd = sense_ground(arena, robots[self]);
  sense_camera(robots, self, r.cam, r.v_color);
  return r;
}

}  // namespace herd
