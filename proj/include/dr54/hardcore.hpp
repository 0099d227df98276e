#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dr54/basis.hpp"

namespace dr54 {

// Occupation string on the coarse-grained cycle of length L; bit r of occ is
// a_r. Valid configurations satisfy a_r * a_{r+1} = 0 cyclically.
struct CoarseConfig {
  std::uint32_t occ = 0;
  int length = 0;

  bool is_hardcore() const;
  int popcount() const;
  std::string to_string() const;  // a_0 a_1 ... a_{L-1}
  static CoarseConfig from_string(const std::string& s);

  friend bool operator==(const CoarseConfig& a, const CoarseConfig& b) {
    return a.occ == b.occ && a.length == b.length;
  }
};

// All L-bit cyclic strings with no adjacent 1s, ascending in occ.
std::vector<CoarseConfig> enumerate_hardcore(int length);

// Tr M^L for M = [[1,1],[1,0]], by exact integer matrix power. Equals
// F_{L-1} + F_{L+1} and the enumeration count.
std::int64_t count_hardcore(int length);

// Number of hard-core configurations with exactly k occupied sites:
// 1 for k = 0, else L/(L-k) * C(L-k, k). Exact integers.
std::int64_t count_fixed_k(int length, int k);

// (Ta)_r = a_{r-1}: cyclic shift moving every occupation one site up.
CoarseConfig translate(CoarseConfig a);

struct OrbitRecord {
  CoarseConfig representative;  // smallest occ value in the orbit
  int period = 0;               // minimal p with T^p rep = rep; p divides L
  std::vector<CoarseConfig> members;  // T^t rep for t = 0..p-1
};

// Disjoint translation orbits covering enumerate_hardcore(L).
std::vector<OrbitRecord> decompose_orbits(int length);

// Even-dimer embedding: sites (2r, 2r+1) = (a_r, a_r).
BasisLabel embed_even(CoarseConfig a);

// Odd-dimer embedding: sites (2r+1, 2r+2 mod N) = (a_r, a_r).
BasisLabel embed_odd(CoarseConfig a);

// Sorted labels of the protected even-dimer sector at N = 2L.
std::vector<BasisLabel> protected_labels_even(int length);

// Orbit whose representative matches the occupation string (throws if none).
const OrbitRecord& find_orbit(const std::vector<OrbitRecord>& orbits,
                              const std::string& rep);

}  // namespace dr54
