#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace dr54 {

// Generator identifier recorded in run manifests. Randomness is derived from
// keyed splitmix64 streams; Gaussians use the Box-Muller transform on 53-bit
// uniforms. Both pieces are fully specified, so identical seeds reproduce
// identical numbers on any conforming implementation.
inline constexpr std::string_view kGeneratorId = "splitmix64/box-muller-v1";

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent stream key for (seed, a, b, c). Streams for distinct keys are
// independent, so per-gate sampling is order-free and safe to parallelize.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                      std::uint64_t b, std::uint64_t c) {
  std::uint64_t k = splitmix64_mix(seed + 0x9e3779b97f4a7c15ull);
  k = splitmix64_mix(k ^ (a + 0x9e3779b97f4a7c15ull));
  k = splitmix64_mix(k ^ (b + 0x9e3779b97f4a7c15ull));
  k = splitmix64_mix(k ^ (c + 0x9e3779b97f4a7c15ull));
  return k;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return splitmix64_mix(state_);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal pair (Box-Muller); u1 is shifted away from zero.
  std::pair<double, double> gaussian_pair();

  double gaussian();

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace dr54
