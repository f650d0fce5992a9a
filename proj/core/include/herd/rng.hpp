#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace herd {

namespace rng_detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace rng_detail

// Counter-based pseudo-random stream: draw i is a pure function of
// (seed, i), so sequences are identical on every platform and independent
// of how work is scheduled across threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    ++counter_;
    return rng_detail::mix64(seed_ + counter_ * rng_detail::kGolden);
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n must be positive. Mask rejection keeps the
  // draw unbiased and platform-independent.
  std::uint64_t uniform_int(std::uint64_t n) {
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t v = next_u64() & mask;
    while (v >= n) v = next_u64() & mask;
    return v;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the second deviate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]; keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTauLocal * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  static constexpr double kTauLocal = 6.283185307179586476925286766559;

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministically derives a child seed from a base seed, a stream label,
// and up to a few indices. Distinct labels give disjoint seed families.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  return rng_detail::mix64(base ^ rng_detail::fnv1a(label));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t a) {
  return rng_detail::mix64(derive_seed(base, label) + rng_detail::kGolden + a);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t a,
                                 std::uint64_t b) {
  return rng_detail::mix64(derive_seed(base, label, a) + rng_detail::kGolden + b);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
  return rng_detail::mix64(derive_seed(base, label, a, b) + rng_detail::kGolden + c);
}

}  // namespace herd
