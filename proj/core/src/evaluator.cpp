#include "herd/evaluator.hpp"

#include <stdexcept>

#include "herd/parallel.hpp"

namespace herd {

namespace {

template <typename Candidate>
std::vector<double> run_batch(const ScenarioSpec& scenario, Budget& budget, unsigned threads,
                              const std::vector<Candidate>& candidates,
                              const std::vector<std::uint64_t>& seeds) {
  if (candidates.size() != seeds.size()) {
    throw std::invalid_argument("one seed per candidate required");
  }
  budget.charge(candidates.size());
  std::vector<double> objectives(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    objectives[i] = run_episode(scenario, ShepherdSpec{candidates[i]}, seeds[i]).objective;
  });
  return objectives;
}

}  // namespace

PfsmBatchEvaluator make_pfsm_sim_evaluator(ScenarioSpec scenario, Budget& budget,
                                           unsigned threads) {
  return [scenario = std::move(scenario), &budget, threads](
             const std::vector<PfsmConfig>& candidates,
             const std::vector<std::uint64_t>& seeds) {
    return run_batch(scenario, budget, threads, candidates, seeds);
  };
}

NnBatchEvaluator make_nn_sim_evaluator(ScenarioSpec scenario, Budget& budget, unsigned threads) {
  return [scenario = std::move(scenario), &budget, threads](
             const std::vector<NnGenome>& candidates, const std::vector<std::uint64_t>& seeds) {
    return run_batch(scenario, budget, threads, candidates, seeds);
  };
}

}  // namespace herd
