#include "herd/evolution.hpp"

#include <algorithm>
#include <numeric>

#include "herd/rng.hpp"

namespace herd {

namespace {

bool better(double a, double b, ObjectiveSense sense) {
  return sense == ObjectiveSense::kMinimize ? a < b : a > b;
}

// Indices of the population ordered best-first; ties keep the lower index.
std::vector<std::size_t> fitness_order(const std::vector<double>& fitness, ObjectiveSense sense) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return better(fitness[a], fitness[b], sense);
  });
  return order;
}

}  // namespace

NnGenome evolve(ObjectiveSense sense, Budget& budget, std::uint64_t seed,
                const NnBatchEvaluator& evaluate, const EvoOptions& options,
                const EvoObserver& observer) {
  const std::size_t pop_size = static_cast<std::size_t>(options.population_size);
  const int episodes_each = options.episodes_per_individual;
  const std::uint64_t per_generation = pop_size * static_cast<std::uint64_t>(episodes_each);

  RngStream rng(derive_seed(seed, "evolution"));
  std::vector<NnGenome> population;
  population.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) population.push_back(random_genome(rng));

  NnGenome best = population.front();
  double best_fitness = 0.0;
  bool have_best = false;

  std::vector<NnGenome> batch;
  std::vector<std::uint64_t> seeds;
  std::vector<double> fitness(pop_size, 0.0);

  int generation = 0;
  while (budget.remaining() >= per_generation) {
    batch.clear();
    seeds.clear();
    batch.reserve(pop_size * episodes_each);
    seeds.reserve(pop_size * episodes_each);
    for (std::size_t i = 0; i < pop_size; ++i) {
      for (int e = 0; e < episodes_each; ++e) {
        batch.push_back(population[i]);
        seeds.push_back(derive_seed(seed, "evolution-fitness",
                                    static_cast<std::uint64_t>(generation), i,
                                    static_cast<std::uint64_t>(e)));
      }
    }
    const std::vector<double> values = evaluate(batch, seeds);
    for (std::size_t i = 0; i < pop_size; ++i) {
      double total = 0.0;
      for (int e = 0; e < episodes_each; ++e) total += values[i * episodes_each + e];
      fitness[i] = total / episodes_each;
    }

    const std::vector<std::size_t> order = fitness_order(fitness, sense);
    if (!have_best || better(fitness[order[0]], best_fitness, sense)) {
      best = population[order[0]];
      best_fitness = fitness[order[0]];
      have_best = true;
    }
    if (observer) {
      observer({generation, best_fitness, budget.consumed(), &population, &fitness});
    }

    // Elites survive unchanged; mutants of uniformly drawn elites fill the
    // remaining slots.
    std::vector<NnGenome> next;
    next.reserve(pop_size);
    const std::size_t elite_count =
        std::min<std::size_t>(options.elite_count, pop_size);
    for (std::size_t i = 0; i < elite_count; ++i) next.push_back(population[order[i]]);
    while (next.size() < pop_size) {
      const std::size_t parent = rng.uniform_int(elite_count);
      next.push_back(mutate_genome(next[parent], rng));
    }
    population = std::move(next);
    ++generation;
  }

  if (!have_best) {
    // Budget below one generation: score as much of the initial population
    // as affordable, whole individuals first.
    const std::uint64_t per_individual = static_cast<std::uint64_t>(episodes_each);
    std::size_t evaluated = 0;
    while (evaluated < pop_size && budget.remaining() >= per_individual) {
      batch.assign(per_individual, population[evaluated]);
      seeds.clear();
      for (int e = 0; e < episodes_each; ++e) {
        seeds.push_back(derive_seed(seed, "evolution-fitness", 0, evaluated,
                                    static_cast<std::uint64_t>(e)));
      }
      const std::vector<double> values = evaluate(batch, seeds);
      const double f = std::accumulate(values.begin(), values.end(), 0.0) / episodes_each;
      if (!have_best || better(f, best_fitness, sense)) {
        best = population[evaluated];
        best_fitness = f;
        have_best = true;
      }
      ++evaluated;
    }
  }
  return best;
}

}  // namespace herd
