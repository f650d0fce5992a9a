#pragma once

#include <cstdint>
#include <string_view>

#include "herd/errors.hpp"

namespace herd {

// LED signal a robot can emit; kNone emits nothing perceivable.
enum class ColorSignal : std::uint8_t { kNone = 0, kCyan, kMagenta, kYellow };

// Perceivable signal colors (the delta parameter of color modules).
enum class SignalColor : std::uint8_t { kCyan = 0, kMagenta, kYellow };

enum class FloorColor : std::uint8_t { kBlack = 0, kGray, kWhite };

inline constexpr int kSignalColorCount = 3;

inline ColorSignal to_color_signal(SignalColor c) {
  return static_cast<ColorSignal>(static_cast<int>(c) + 1);
}

// Index of an emitted color into {C, M, Y} arrays; kNone has no index.
inline int signal_index(ColorSignal c) { return static_cast<int>(c) - 1; }
inline int signal_index(SignalColor c) { return static_cast<int>(c); }

inline std::string_view to_string(ColorSignal c) {
  switch (c) {
    case ColorSignal::kNone: return "none";
    case ColorSignal::kCyan: return "cyan";
    case ColorSignal::kMagenta: return "magenta";
    case ColorSignal::kYellow: return "yellow";
  }
  return "none";
}

inline std::string_view to_string(SignalColor c) {
  switch (c) {
    case SignalColor::kCyan: return "cyan";
    case SignalColor::kMagenta: return "magenta";
    case SignalColor::kYellow: return "yellow";
  }
  return "cyan";
}

inline std::string_view to_string(FloorColor c) {
  switch (c) {
    case FloorColor::kBlack: return "black";
    case FloorColor::kGray: return "gray";
    case FloorColor::kWhite: return "white";
  }
  return "gray";
}

inline ColorSignal color_signal_from_string(std::string_view s) {
  if (s == "none") return ColorSignal::kNone;
  if (s == "cyan") return ColorSignal::kCyan;
  if (s == "magenta") return ColorSignal::kMagenta;
  if (s == "yellow") return ColorSignal::kYellow;
  throw FormatError("unknown color signal: " + std::string(s));
}

inline SignalColor signal_color_from_string(std::string_view s) {
  if (s == "cyan") return SignalColor::kCyan;
  if (s == "magenta") return SignalColor::kMagenta;
  if (s == "yellow") return SignalColor::kYellow;
  throw FormatError("unknown signal color: " + std::string(s));
}

inline FloorColor floor_color_from_string(std::string_view s) {
  if (s == "black") return FloorColor::kBlack;
  if (s == "gray") return FloorColor::kGray;
  if (s == "white") return FloorColor::kWhite;
  throw FormatError("unknown floor color: " + std::string(s));
}

}  // namespace herd
