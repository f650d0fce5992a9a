#pragma once

#include <cstdint>
#include <string_view>

#include "herd/controller.hpp"

namespace herd {

// The three pre-programmed sheep behaviors. Sheep stay put unless
// stimulated, display yellow, and halt for good on white floor.
enum class SheepVariant : std::uint8_t {
  kC1Attraction = 0,   // approaches magenta
  kC2Repulsion,        // flees cyan
  kC3AttractionRepulsion,
};

// When a C3 sheep sees both colors at once.
enum class SheepPriority : std::uint8_t { kRepulsionFirst = 0, kAttractionFirst };

inline std::string_view to_string(SheepVariant v) {
  switch (v) {
    case SheepVariant::kC1Attraction: return "c1";
    case SheepVariant::kC2Repulsion: return "c2";
    case SheepVariant::kC3AttractionRepulsion: return "c3";
  }
  return "c1";
}

SheepVariant sheep_variant_from_string(std::string_view s);

class SheepController : public Controller {
 public:
  explicit SheepController(SheepVariant variant,
                           SheepPriority priority = SheepPriority::kRepulsionFirst)
      : variant_(variant), priority_(priority) {}

  Actuation step(const SensorReadings& readings, RngStream& rng) override;
  bool halt_latched() const override { return halted_; }

 private:
  SheepVariant variant_;
  SheepPriority priority_;
  bool halted_ = false;
  int nudge_cycles_left_ = 0;
  int capture_cycles_left_ = 0;
};

}  // namespace herd
