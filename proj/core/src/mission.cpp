#include "herd/mission.hpp"

#include <cmath>
#include <stdexcept>

#include "herd/errors.hpp"
#include "nlohmann/json.hpp"

namespace herd {

double f1_centroid_spread(std::span<const Vec2> sheep_positions) {
  if (sheep_positions.empty()) throw std::invalid_argument("no sheep positions");
  for (const Vec2& p : sheep_positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("non-finite sheep position");
    }
  }
  // Offset-compensated mean: coincident flocks get a bit-exact centroid.
  const Vec2 origin = sheep_positions.front();
  Vec2 offset_sum;
  for (const Vec2& p : sheep_positions) offset_sum += p - origin;
  const Vec2 centroid = origin + offset_sum * (1.0 / static_cast<double>(sheep_positions.size()));
  double total = 0.0;
  for (const Vec2& p : sheep_positions) total += (p - centroid).norm();
  return total / static_cast<double>(sheep_positions.size());
}

int f2_sheep_outside(std::span<const Vec2> sheep_positions,
                     std::span<const CircleRegion> white_regions) {
  int outside = 0;
  for (const Vec2& p : sheep_positions) {
    bool inside = false;
    for (const CircleRegion& r : white_regions) {
      if (r.contains(p)) {
        inside = true;
        break;
      }
    }
    if (!inside) ++outside;
  }
  return outside;
}

double mission_objective(const ScenarioSpec& scenario, std::span<const Vec2> sheep_positions) {
  if (scenario.mission == Mission::kHerding) {
    return static_cast<double>(f2_sheep_outside(sheep_positions, scenario.arena.regions));
  }
  return f1_centroid_spread(sheep_positions);
}

ScenarioSpec build_scenario(Mission mission, SheepVariant variant) {
  ScenarioSpec s;
  s.mission = mission;
  s.sheep_variant = variant;
  s.arena = arena_regular_octagon(kArenaArea);
  s.placement = mission == Mission::kAggregation ? PlacementMode::kWholeArena
                                                 : PlacementMode::kCentralDisk;
  if (mission == Mission::kHerding) {
    // Four equivalent goal regions on the diagonals.
    for (int k = 0; k < 4; ++k) {
      const double bearing = (2 * k + 1) * std::numbers::pi / 4.0;
      s.arena.regions.push_back(
          {unit_vector(bearing) * kHerdingRegionDistance, kHerdingRegionRadius,
           FloorColor::kWhite});
    }
  }
  return s;
}

Mission mission_from_string(std::string_view s) {
  if (s == "aggregation") return Mission::kAggregation;
  if (s == "dispersion") return Mission::kDispersion;
  if (s == "herding") return Mission::kHerding;
  throw FormatError("unknown mission: " + std::string(s));
}

ObjectiveSense sense_from_string(std::string_view s) {
  if (s == "min") return ObjectiveSense::kMinimize;
  if (s == "max") return ObjectiveSense::kMaximize;
  throw FormatError("unknown objective sense: " + std::string(s));
}

std::string scenario_to_json(const ScenarioSpec& scenario) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "scenario";
  j["mission"] = std::string(to_string(scenario.mission));
  j["sheep"] = std::string(to_string(scenario.sheep_variant));
  j["n_shepherds"] = scenario.n_shepherds;
  j["n_sheep"] = scenario.n_sheep;
  j["duration_cycles"] = scenario.duration_cycles;
  j["placement"] =
      scenario.placement == PlacementMode::kWholeArena ? "whole_arena" : "central_disk";
  j["central_disk_radius"] = scenario.central_disk_radius;
  j["arena"] = nlohmann::json::parse(arena_to_json(scenario.arena));
  return j.dump(2);
}

ScenarioSpec scenario_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scenario JSON parse failure: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("unsupported scenario format_version");
    }
    ScenarioSpec s;
    s.mission = mission_from_string(j.at("mission").get<std::string>());
    s.sheep_variant = sheep_variant_from_string(j.at("sheep").get<std::string>());
    s.n_shepherds = j.at("n_shepherds").get<int>();
    s.n_sheep = j.at("n_sheep").get<int>();
    s.duration_cycles = j.at("duration_cycles").get<int>();
    const std::string placement = j.at("placement").get<std::string>();
    if (placement == "whole_arena") {
      s.placement = PlacementMode::kWholeArena;
    } else if (placement == "central_disk") {
      s.placement = PlacementMode::kCentralDisk;
    } else {
      throw FormatError("unknown placement mode: " + placement);
    }
    s.central_disk_radius = j.at("central_disk_radius").get<double>();
    s.arena = arena_from_json(j.at("arena").dump());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scenario JSON field error: ") + e.what());
  }
}

}  // namespace herd
