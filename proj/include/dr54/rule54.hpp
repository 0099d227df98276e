#pragma once

#include <vector>

#include "dr54/basis.hpp"
#include "dr54/linalg.hpp"

namespace dr54 {

enum class Parity { Even, Odd };

// chi(x,y,z) = (x + y + z + x*z) mod 2, the reversible three-site update.
constexpr int chi(int x, int y, int z) { return (x + y + z + x * z) & 1; }

// Replaces bit j of s by chi(bit j-1, bit j, bit j+1), indices mod n_sites.
BasisLabel apply_rule54_gate(BasisLabel s, int j, int n_sites);

// Explicit image array of a basis-state permutation; image[s] is where the
// basis state s is sent. Memory is 4*2^N bytes, trivial at the sizes we run.
struct PermutationMap {
  int n_sites = 0;
  std::vector<BasisLabel> image;

  std::size_t dim() const { return image.size(); }
  BasisLabel operator()(BasisLabel s) const { return image[s]; }
  bool is_bijection() const;
};

PermutationMap identity_permutation(int n_sites);

// All same-parity centers update disjoint sites and read only untouched
// neighbors, so the layer is computed as one simultaneous update.
PermutationMap layer_permutation(Parity parity, int n_sites);

// second ∘ first (first applied first).
PermutationMap compose(const PermutationMap& second,
                       const PermutationMap& first);

// One bare Floquet period U_54 = U_odd ∘ U_even. The reversed flag swaps the
// layer order, which only reverses the coarse-grained translation direction.
PermutationMap floquet_permutation(int n_sites, bool reversed = false);

StateVector apply_permutation(const PermutationMap& p, const StateVector& psi);

DenseUnitary permutation_to_unitary(const PermutationMap& p);

}  // namespace dr54
