#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "herd/budget.hpp"
#include "herd/nn.hpp"
#include "herd/pfsm.hpp"
#include "herd/sim.hpp"

namespace herd {

// Batch evaluation contract used by the design methods: one episode per
// (candidate, seed) pair, charged to the budget before any episode runs.
// Implementations must be deterministic in the seed list alone.
using PfsmBatchEvaluator = std::function<std::vector<double>(
    const std::vector<PfsmConfig>&, const std::vector<std::uint64_t>&)>;
using NnBatchEvaluator = std::function<std::vector<double>(
    const std::vector<NnGenome>&, const std::vector<std::uint64_t>&)>;

// Simulation-backed evaluators; episodes run in parallel over `threads`
// workers with results identical to serial execution.
PfsmBatchEvaluator make_pfsm_sim_evaluator(ScenarioSpec scenario, Budget& budget,
                                           unsigned threads);
NnBatchEvaluator make_nn_sim_evaluator(ScenarioSpec scenario, Budget& budget, unsigned threads);

}  // namespace herd
