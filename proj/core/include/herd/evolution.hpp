#pragma once

#include <functional>

#include "herd/evaluator.hpp"

namespace herd {

struct EvoOptions {
  int population_size = 100;
  int elite_count = 20;             // copied unchanged each generation
  int episodes_per_individual = 10; // fresh seeds every generation
};

struct GenerationReport {
  int generation = 0;
  double best_fitness = 0.0;  // best-so-far across generations
  std::uint64_t consumed_after = 0;
  const std::vector<NnGenome>* population = nullptr;
  const std::vector<double>* fitnesses = nullptr;
};

using EvoObserver = std::function<void(const GenerationReport&)>;

// Elitist neuroevolution over the genome box: each generation evaluates the
// whole population on fresh seeds, keeps the elites unchanged, and fills
// the rest with mutants of uniformly drawn elites. Runs floor(budget /
// (population * episodes_per_individual)) generations and returns the best
// genome ever observed. A budget below one generation evaluates as much of
// the initial population as it can afford.
NnGenome evolve(ObjectiveSense sense, Budget& budget, std::uint64_t seed,
                const NnBatchEvaluator& evaluate, const EvoOptions& options = {},
                const EvoObserver& observer = nullptr);

}  // namespace herd
