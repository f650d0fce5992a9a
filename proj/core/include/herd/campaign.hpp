#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "herd/evolution.hpp"
#include "herd/racing.hpp"
#include "herd/sim.hpp"
#include "herd/stats.hpp"

namespace herd {

enum class DesignMethod : std::uint8_t { kPistacchio = 0, kEvoCmy, kRwalk, kFileController };

std::string_view to_string(DesignMethod m);
DesignMethod design_method_from_string(std::string_view s);

struct MethodConfig {
  DesignMethod method = DesignMethod::kRwalk;
  int designs_per_scenario = 1;
  int assessments_per_design = 1;
  std::uint64_t budget = 0;    // episodes per design run (automatic methods)
  std::string controller_dir;  // kFileController: holds <mission>_<sheep>.json
};

struct ScenarioId {
  Mission mission = Mission::kAggregation;
  SheepVariant sheep = SheepVariant::kC1Attraction;

  bool operator==(const ScenarioId&) const = default;
};

struct CampaignConfig {
  std::uint64_t master_seed = 0;
  std::string output_dir;
  std::vector<ScenarioId> scenarios;
  std::vector<MethodConfig> methods;
  unsigned threads = 0;

  // Throws FormatError unless every method yields the same number of
  // observations per scenario and automatic methods carry a valid budget.
  void validate() const;
};

std::string campaign_config_to_json(const CampaignConfig& config);
CampaignConfig campaign_config_from_json(const std::string& text);

// One assessment episode outcome; one CSV row.
struct Observation {
  std::string method;
  Mission mission = Mission::kAggregation;
  SheepVariant sheep = SheepVariant::kC1Attraction;
  int design_idx = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
};

// RFC 4180 CSV with header method,mission,sheep,design_idx,seed,objective,sense.
std::string observations_to_csv(std::span<const Observation> observations);
std::vector<Observation> observations_from_csv(const std::string& text);

// Loads a shepherd controller from a JSON file, or accepts the baseline
// name "rwalk" without a file. Throws FormatError on malformed content.
ShepherdSpec controller_from_file(const std::string& path_or_name);
std::string controller_to_json(const ShepherdSpec& spec);

// One design run: consumes (at most) the budget and returns the designed
// controller. Seeds are drawn from the "design" stream. For kRwalk this is
// a no-op returning the baseline.
ShepherdSpec design_controller(DesignMethod method, const ScenarioSpec& scenario,
                               std::uint64_t budget_episodes, std::uint64_t seed,
                               unsigned threads, std::string* manifest_json = nullptr);

// n fresh-seed assessment episodes of one controller on one scenario;
// seeds derive from (seed, "assess", index).
std::vector<EpisodeResult> assess(const ShepherdSpec& spec, const ScenarioSpec& scenario, int n,
                                  std::uint64_t seed, unsigned threads = 1);

// Full protocol: per (method, scenario), run the design phase (resuming
// from any controller files already present), then the assessment phase
// with seeds disjoint from every design seed, and write controllers,
// manifests, scenario files, and observations.csv under output_dir.
std::vector<Observation> run_campaign(const CampaignConfig& config);

// Blocked rank aggregation of a balanced observation table: one block per
// (scenario, replicate index), ranked under each mission's sense.
RankSummary summarize_observations(std::span<const Observation> observations,
                                   double alpha = 0.05);

}  // namespace herd
