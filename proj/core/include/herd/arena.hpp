#pragma once

#include <array>
#include <string>
#include <vector>

#include "herd/color.hpp"
#include "herd/vec2.hpp"

namespace herd {

struct CircleRegion {
  Vec2 center;
  double radius = 0.0;
  FloorColor color = FloorColor::kWhite;

  bool contains(Vec2 p) const {
    const Vec2 d = p - center;
    return d.norm_sq() <= radius * radius;
  }
};

// Regular octagonal arena centered at the origin with one vertex on the
// positive x axis, plus an ordered list of colored floor regions. Later
// regions override earlier ones.
struct ArenaSpec {
  std::array<Vec2, 8> vertices{};
  std::vector<CircleRegion> regions;
  FloorColor default_color = FloorColor::kGray;

  // Derived geometry, filled by arena_regular_octagon.
  std::array<Vec2, 8> edge_normals{};  // outward, at 22.5 + 45k degrees
  double apothem = 0.0;
  double circumradius = 0.0;
  double side_length = 0.0;

  double diameter() const { return 2.0 * circumradius; }
};

// Builds the arena polygon for a requested area (square meters).
// Throws std::invalid_argument for non-positive or non-finite areas.
ArenaSpec arena_regular_octagon(double area);

// True iff the point lies inside the octagon or on its boundary.
bool point_in_arena(const ArenaSpec& arena, Vec2 p);

// Floor color at a point inside the arena: the last region containing the
// point wins, else the default color. Throws OutOfArenaError outside.
FloorColor floor_color_at(const ArenaSpec& arena, Vec2 p);

// Signed shoelace area of the vertex polygon (used to cross-check geometry).
double polygon_area(const std::array<Vec2, 8>& vertices);

std::string arena_to_json(const ArenaSpec& arena);
ArenaSpec arena_from_json(const std::string& text);

}  // namespace herd
