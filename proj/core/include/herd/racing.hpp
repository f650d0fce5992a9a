#pragma once

#include <functional>

#include "herd/evaluator.hpp"
#include "herd/stats.hpp"

namespace herd {

struct RaceOptions {
  int generation_size = 20;
  int planned_iterations = 5;   // remaining budget is split across these
  int elite_count = 5;          // best-ranked survivors carried forward
  int min_instances_before_test = 5;
  double alpha = 0.05;
};

struct RaceIterationReport {
  int iteration = 0;
  int instances_completed = 0;
  int survivors = 0;
  double best_mean_objective = 0.0;  // best-so-far across iterations
  std::uint64_t consumed_after = 0;
};

using RaceObserver = std::function<void(const RaceIterationReport&)>;

// Iterated racing over the PFSM architecture: generations of candidates
// (uniform samples first, then elites plus their mutants) race on a growing
// list of shared instance seeds; Friedman elimination prunes the field once
// enough instances have completed, and the race stops when few enough
// candidates survive or its allotment is spent. Returns the best-ranked
// configuration found; never consumes more than the budget allows.
PfsmConfig iterated_race(ObjectiveSense sense, Budget& budget, std::uint64_t seed,
                         const PfsmBatchEvaluator& evaluate, const RaceOptions& options = {},
                         const RaceObserver& observer = nullptr);

}  // namespace herd
