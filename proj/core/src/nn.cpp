#include "herd/nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "herd/errors.hpp"
#include "nlohmann/json.hpp"

namespace herd {

namespace {

constexpr double kMutationRate = 0.1;
constexpr double kMutationSigma = 1.0;

// Projection directions for the color vectors, body frame.
constexpr std::array<double, 4> kProjectionAngles = {
    std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 4.0, 5.0 * std::numbers::pi / 4.0,
    7.0 * std::numbers::pi / 4.0};

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

NnGenome::NnGenome(const std::vector<double>& weights) {
  if (weights.size() != kNnWeightCount) {
    throw std::invalid_argument("genome requires exactly 192 weights");
  }
  for (int i = 0; i < kNnWeightCount; ++i) {
    if (!std::isfinite(weights[i])) throw std::invalid_argument("genome weight not finite");
    weights_[i] = std::clamp(weights[i], kNnWeightMin, kNnWeightMax);
  }
}

void NnGenome::set(int flat_index, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("genome weight not finite");
  weights_[flat_index] = std::clamp(value, kNnWeightMin, kNnWeightMax);
}

NnInput encode_inputs(const SensorReadings& readings) {
  NnInput in;
  for (int i = 0; i < kProxSensorCount; ++i) in.values[i] = readings.prox[i];
  for (int i = 0; i < kGroundSensorCount; ++i) {
    switch (readings.gnd[i]) {
      case FloorColor::kBlack: in.values[8 + i] = 0.0; break;
      case FloorColor::kGray: in.values[8 + i] = 0.5; break;
      case FloorColor::kWhite: in.values[8 + i] = 1.0; break;
    }
  }
  for (int c = 0; c < kSignalColorCount; ++c) {
    const int base = 11 + 4 * c;
    if (!readings.cam[c]) continue;  // block stays zero
    for (int k = 0; k < 4; ++k) {
      const double proj = std::cos(readings.v_color[c].angle - kProjectionAngles[k]);
      in.values[base + k] = std::clamp(proj, 0.0, 1.0);
    }
  }
  in.values[kNnInputCount - 1] = 1.0;  // bias
  return in;
}

Actuation forward(const NnGenome& genome, const NnInput& input) {
  std::array<double, kNnOutputCount> out;
  const auto& w = genome.weights();
  for (int b = 0; b < kNnOutputCount; ++b) {
    double z = 0.0;
    const int row = b * kNnInputCount;
    for (int a = 0; a < kNnInputCount; ++a) z += w[row + a] * input.values[a];
    out[b] = logistic(z);
  }
  Actuation act;
  act.v_left = kMaxWheelSpeed * (out[0] - out[1]);
  act.v_right = kMaxWheelSpeed * (out[2] - out[3]);
  int led = 0;
  for (int b = 1; b < 4; ++b) {
    if (out[4 + b] > out[4 + led]) led = b;  // ties keep the lowest index
  }
  act.led = static_cast<ColorSignal>(led);
  return act;
}

NnGenome mutate_genome(const NnGenome& genome, RngStream& rng) {
  NnGenome out = genome;
  for (;;) {
    for (int i = 0; i < kNnWeightCount; ++i) {
      if (rng.uniform() < kMutationRate) {
        out.set(i, out.weights()[i] + rng.normal(0.0, kMutationSigma));
      }
    }
    if (!(out == genome)) return out;
    // Nothing changed (no weight drawn, or clamping undid the noise):
    // force one fresh perturbation.
    const int i = static_cast<int>(rng.uniform_int(kNnWeightCount));
    out.set(i, out.weights()[i] + rng.normal(0.0, kMutationSigma));
    if (!(out == genome)) return out;
  }
}

NnGenome random_genome(RngStream& rng) {
  NnGenome g;
  for (int i = 0; i < kNnWeightCount; ++i) g.set(i, rng.uniform(kNnWeightMin, kNnWeightMax));
  return g;
}

std::string nn_to_json(const NnGenome& genome) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["type"] = "nn";
  j["weights"] = genome.weights();
  return j.dump(2);
}

NnGenome nn_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("genome JSON parse failure: ") + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw FormatError("unsupported genome format_version");
    }
    if (j.at("type").get<std::string>() != "nn") throw FormatError("not a genome document");
    const auto weights = j.at("weights").get<std::vector<double>>();
    try {
      return NnGenome(weights);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("genome JSON field error: ") + e.what());
  }
}

}  // namespace herd
