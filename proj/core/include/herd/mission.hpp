#pragma once

#include <span>
#include <string>
#include <string_view>

#include "herd/arena.hpp"
#include "herd/sheep.hpp"

namespace herd {

enum class Mission : std::uint8_t { kAggregation = 0, kDispersion, kHerding };
enum class ObjectiveSense : std::uint8_t { kMinimize = 0, kMaximize };

inline constexpr double kArenaArea = 2.8;               // m^2
inline constexpr double kCentralDiskRadius = 0.60;      // m, spawn disk
inline constexpr double kHerdingRegionRadius = 0.309;   // m, ~0.3 m^2 each
inline constexpr double kHerdingRegionDistance = 0.64;  // m from center
inline constexpr int kEpisodeCycles = 1200;             // 120 s at 0.1 s per cycle

enum class PlacementMode : std::uint8_t { kWholeArena = 0, kCentralDisk };

// One experimental scenario: a mission paired with a sheep behavior.
struct ScenarioSpec {
  Mission mission = Mission::kAggregation;
  SheepVariant sheep_variant = SheepVariant::kC1Attraction;
  int n_shepherds = 5;
  int n_sheep = 10;
  int duration_cycles = kEpisodeCycles;
  ArenaSpec arena;
  PlacementMode placement = PlacementMode::kWholeArena;
  double central_disk_radius = kCentralDiskRadius;

  ObjectiveSense sense() const {
    return mission == Mission::kDispersion ? ObjectiveSense::kMaximize
                                           : ObjectiveSense::kMinimize;
  }

  // Objective assigned when a controller faults mid-episode.
  double worst_objective() const {
    switch (mission) {
      case Mission::kAggregation: return arena.diameter();
      case Mission::kDispersion: return 0.0;
      case Mission::kHerding: return static_cast<double>(n_sheep);
    }
    return 0.0;
  }
};

// Mean distance from each position to the positions' centroid.
// Throws std::invalid_argument for empty or non-finite input.
double f1_centroid_spread(std::span<const Vec2> sheep_positions);

// Number of positions lying in none of the regions (boundary counts as
// inside).
int f2_sheep_outside(std::span<const Vec2> sheep_positions,
                     std::span<const CircleRegion> white_regions);

// Objective of a scenario evaluated on final sheep positions.
double mission_objective(const ScenarioSpec& scenario, std::span<const Vec2> sheep_positions);

ScenarioSpec build_scenario(Mission mission, SheepVariant variant);

inline std::string_view to_string(Mission m) {
  switch (m) {
    case Mission::kAggregation: return "aggregation";
    case Mission::kDispersion: return "dispersion";
    case Mission::kHerding: return "herding";
  }
  return "aggregation";
}

inline std::string_view to_string(ObjectiveSense s) {
  return s == ObjectiveSense::kMinimize ? "min" : "max";
}

Mission mission_from_string(std::string_view s);
ObjectiveSense sense_from_string(std::string_view s);

std::string scenario_to_json(const ScenarioSpec& scenario);
ScenarioSpec scenario_from_json(const std::string& text);

}  // namespace herd
