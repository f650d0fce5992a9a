#pragma once

#include <array>
#include <string>
#include <vector>

#include "herd/controller.hpp"

namespace herd {

inline constexpr int kNnInputCount = 24;
inline constexpr int kNnOutputCount = 8;
inline constexpr int kNnWeightCount = kNnInputCount * kNnOutputCount;  // 192
inline constexpr double kNnWeightMin = -5.0;
inline constexpr double kNnWeightMax = 5.0;

// Flat weight vector of the fully connected feed-forward net (no hidden
// layer). Weight for (input a, output b), both 0-based, sits at b*24 + a.
class NnGenome {
 public:
  NnGenome() { weights_.fill(0.0); }

  // Validates the count, requires finite values, clamps into [-5, 5].
  explicit NnGenome(const std::vector<double>& weights);

  const std::array<double, kNnWeightCount>& weights() const { return weights_; }
  double& at(int output, int input) { return weights_[output * kNnInputCount + input]; }
  double at(int output, int input) const { return weights_[output * kNnInputCount + input]; }
  void set(int flat_index, double value);

  bool operator==(const NnGenome&) const = default;

 private:
  std::array<double, kNnWeightCount> weights_;
};

struct NnInput {
  std::array<double, kNnInputCount> values{};
};

// Input encoding: 8 proximity readings, 3 ground colors as {0, 0.5, 1},
// 12 clipped scalar projections of the color vectors onto the diagonal
// body directions (45/135/225/315 degrees, order C M Y), and a 1.0 bias.
NnInput encode_inputs(const SensorReadings& readings);

// Logistic forward pass and output decoding: wheel velocities from paired
// output differences, LED from the argmax of the last four outputs.
Actuation forward(const NnGenome& genome, const NnInput& input);

// Independent Gaussian perturbation (sigma 1.0) of each weight with
// probability 0.1, clamped; at least one weight always changes.
NnGenome mutate_genome(const NnGenome& genome, RngStream& rng);

// Uniform genome over the weight box.
NnGenome random_genome(RngStream& rng);

std::string nn_to_json(const NnGenome& genome);
NnGenome nn_from_json(const std::string& text);

class NnController : public Controller {
 public:
  explicit NnController(NnGenome genome) : genome_(std::move(genome)) {}

  Actuation step(const SensorReadings& readings, RngStream& /*rng*/) override {
    return forward(genome_, encode_inputs(readings));
  }

  const NnGenome& genome() const { return genome_; }

 private:
  NnGenome genome_;
};

}  // namespace herd
