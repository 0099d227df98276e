#include "dr54/rng.hpp"

#include <cmath>
#include <numbers>

namespace dr54 {

std::pair<double, double> SplitMix64::gaussian_pair() {
  // u1 in (0,1] so the log is finite.
  const double u1 =
      (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

double SplitMix64::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  auto [a, b] = gaussian_pair();
  cached_ = b;
  has_cached_ = true;
  return a;
}

}  // namespace dr54
