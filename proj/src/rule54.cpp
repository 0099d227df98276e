#include "dr54/rule54.hpp"

#include <algorithm>
#include <numeric>

namespace dr54 {

BasisLabel apply_rule54_gate(BasisLabel s, int j, int n_sites) {
  require(0 <= j && j < n_sites, "apply_rule54_gate: center out of range");
  const int x = bit_at(s, wrap_site(j - 1, n_sites));
  const int y = bit_at(s, j);
  const int z = bit_at(s, wrap_site(j + 1, n_sites));
  return with_bit(s, j, chi(x, y, z));
}

bool PermutationMap::is_bijection() const {
  std::vector<bool> seen(image.size(), false);
  for (const BasisLabel t : image) {
    if (t >= image.size() || seen[t]) return false;
    seen[t] = true;
  }
  return true;
}

PermutationMap identity_permutation(int n_sites) {
  PermutationMap p{n_sites, std::vector<BasisLabel>(dim_for_sites(n_sites))};
  std::iota(p.image.begin(), p.image.end(), BasisLabel{0});
  return p;
}

PermutationMap layer_permutation(Parity parity, int n_sites) {
  require(n_sites >= 2 && n_sites % 2 == 0 && n_sites <= kMaxSites,
          "layer_permutation: n_sites must be even and within range");
  const int offset = parity == Parity::Even ? 0 : 1;
  PermutationMap p{n_sites, std::vector<BasisLabel>(dim_for_sites(n_sites))};
  for (std::size_t s = 0; s < p.image.size(); ++s) {
    const auto in = static_cast<BasisLabel>(s);
    BasisLabel out = in;
    // Same-parity centers read only opposite-parity neighbors, which the
    // layer never touches, so all centers update from the input label.
    for (int c = offset; c < n_sites; c += 2) {
      const int x = bit_at(in, wrap_site(c - 1, n_sites));
      const int y = bit_at(in, c);
      const int z = bit_at(in, wrap_site(c + 1, n_sites));
      out = with_bit(out, c, chi(x, y, z));
    }
    p.image[s] = out;
  }
  return p;
}

PermutationMap compose(const PermutationMap& second,
                       const PermutationMap& first) {
  require(second.n_sites == first.n_sites, "compose: size mismatch");
  PermutationMap p{first.n_sites, std::vector<BasisLabel>(first.dim())};
  for (std::size_t s = 0; s < p.image.size(); ++s)
    p.image[s] = second.image[first.image[s]];
  return p;
}

PermutationMap floquet_permutation(int n_sites, bool reversed) {
  const PermutationMap even = layer_permutation(Parity::Even, n_sites);
  const PermutationMap odd = layer_permutation(Parity::Odd, n_sites);
  return reversed ? compose(even, odd) : compose(odd, even);
}

StateVector apply_permutation(const PermutationMap& p,
                              const StateVector& psi) {
  require(psi.size() == static_cast<Eigen::Index>(p.dim()),
          "apply_permutation: dimension mismatch");
  StateVector out(psi.size());
  for (std::size_t s = 0; s < p.dim(); ++s) out[p.image[s]] = psi[s];
  return out;
}

DenseUnitary permutation_to_unitary(const PermutationMap& p) {
  const auto dim = static_cast<Eigen::Index>(p.dim());
  DenseUnitary u = DenseUnitary::Zero(dim, dim);
  for (std::size_t s = 0; s < p.dim(); ++s)
    u(p.image[s], static_cast<Eigen::Index>(s)) = 1.0;
  return u;
}

}  // namespace dr54
