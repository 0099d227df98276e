#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dr54 {

// Computational-basis label for a periodic chain of n_sites qubits.
// Bit j of the integer is the occupation of physical site j (site 0 is the
// least significant bit). All site indices are understood modulo n_sites.
using BasisLabel = std::uint32_t;

inline constexpr int kMaxSites = 24;

constexpr std::size_t dim_for_sites(int n_sites) {
  return std::size_t{1} << n_sites;
}

constexpr int wrap_site(int j, int n_sites) {
  return ((j % n_sites) + n_sites) % n_sites;
}

constexpr int bit_at(BasisLabel s, int j) { return (s >> j) & 1u; }

constexpr BasisLabel with_bit(BasisLabel s, int j, int v) {
  return v ? (s | (BasisLabel{1} << j)) : (s & ~(BasisLabel{1} << j));
}

// Precondition failure (caller passed arguments violating a contract).
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Invariant failure (a computed quantity violates a module contract).
inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

// Label rendered site-0-first, e.g. N=4 label 0b0011 -> "1100".
std::string label_to_string(BasisLabel s, int n_sites);
BasisLabel label_from_string(const std::string& bits);

}  // namespace dr54
