#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "cloudsim/errors.hpp"

namespace cloudsim {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Also reused as the
// tuple-hash mixing function by the load balancer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Named-stream counter-based generator. Streams derived from the same
// (seed, label) pair reproduce the exact draw sequence on any platform;
// distinct labels give statistically independent streams, and adding a
// new consumer label never perturbs existing ones.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string label)
      : label_(std::move(label)), state_(mix64(seed ^ fnv1a64(label_))) {
    if (label_.empty()) {
      throw EmptyLabelError("rng stream label must be non-empty");
    }
  }

  const std::string& label() const { return label_; }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exponential with the given mean; rejects the zero tail of the
  // uniform so log() stays finite.
  double next_exponential(double mean) {
    double u;
    do {
      u = next_double();
    } while (u <= 0.0);
    return -mean * std::log(u);
  }

  std::uint64_t next_below(std::uint64_t bound) {
    // Bounded draw by modulo; bias is negligible for simulation bounds.
    return next_u64() % bound;
  }

 private:
  std::string label_;
  std::uint64_t state_;
};

inline RngStream derive_stream(std::uint64_t seed, const std::string& label) {
  return RngStream(seed, label);
}

}  // namespace cloudsim
