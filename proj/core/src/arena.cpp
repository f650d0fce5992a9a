#include "herd/arena.hpp"

#include <cmath>
#include <stdexcept>

#include "herd/errors.hpp"
#include "nlohmann/json.hpp"

namespace herd {

namespace {

constexpr double kOctagonHalfAngle = std::numbers::pi / 8.0;  // 22.5 deg
constexpr double kContainmentTol = 1e-12;

void fill_derived_geometry(ArenaSpec& arena, double side) {
  arena.side_length = side;
  arena.circumradius = side / (2.0 * std::sin(kOctagonHalfAngle));
  arena.apothem = side / (2.0 * std::tan(kOctagonHalfAngle));
  for (int k = 0; k < 8; ++k) {
    arena.vertices[k] = unit_vector(k * std::numbers::pi / 4.0) * arena.circumradius;
    arena.edge_normals[k] = unit_vector(kOctagonHalfAngle + k * std::numbers::pi / 4.0);
  }
}

}  // namespace

ArenaSpec arena_regular_octagon(double area) {
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw std::invalid_argument("octagon area must be positive and finite");
  }
  // area = 2 (1 + sqrt 2) s^2 for a regular octagon of side s
  const double side = std::sqrt(area / (2.0 * (1.0 + std::numbers::sqrt2)));
  ArenaSpec arena;
  fill_derived_geometry(arena, side);
  return arena;
}

bool point_in_arena(const ArenaSpec& arena, Vec2 p) {
  for (const Vec2& n : arena.edge_normals) {
    if (p.dot(n) > arena.apothem + kContainmentTol) return false;
  }
  return true;
}

FloorColor floor_color_at(const ArenaSpec& arena, Vec2 p) {
  if (!point_in_arena(arena, p)) {
    throw OutOfArenaError("point lies outside the arena");
  }
  for (auto it = arena.regions.rbegin(); it != arena.regions.rend(); ++it) {
    if (it->contains(p)) return it->color;
  }
  return arena.default_color;
}

double polygon_area(const std::array<Vec2, 8>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

std::string arena_to_json(const ArenaSpec& arena) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "arena";
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Vec2& v : arena.vertices) verts.push_back({v.x, v.y});
  j["default_color"] = to_string(arena.default_color);
  auto& regions = j["regions"] = nlohmann::json::array();
  for (const CircleRegion& r : arena.regions) {
    regions.push_back({{"shape", "circle"},
                       {"center", {r.center.x, r.center.y}},
                       {"radius", r.radius},
                       {"color", std::string(to_string(r.color))}});
  }
  return j.dump(2);
}

ArenaSpec arena_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("arena JSON parse failure: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("unsupported arena format_version");
    }
    const auto& verts = j.at("vertices");
    if (verts.size() != 8) throw FormatError("arena requires 8 vertices");
    ArenaSpec arena;
    for (int k = 0; k < 8; ++k) {
      arena.vertices[k] = {verts[k].at(0).get<double>(), verts[k].at(1).get<double>()};
    }
    // Recover side length from the stored polygon; regular octagon assumed.
    const double side = (arena.vertices[1] - arena.vertices[0]).norm();
    fill_derived_geometry(arena, side);
    arena.default_color = floor_color_from_string(j.at("default_color").get<std::string>());
    for (const auto& r : j.value("regions", nlohmann::json::array())) {
      CircleRegion region;
      region.center = {r.at("center").at(0).get<double>(), r.at("center").at(1).get<double>()};
      region.radius = r.at("radius").get<double>();
      region.color = floor_color_from_string(r.at("color").get<std::string>());
      arena.regions.push_back(region);
    }
    return arena;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("arena JSON field error: ") + e.what());
  }
}

}  // namespace herd
