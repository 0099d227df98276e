#include "dr54/basis.hpp"

namespace dr54 {

std::string label_to_string(BasisLabel s, int n_sites) {
  std::string out(n_sites, '0');
  for (int j = 0; j < n_sites; ++j)
    if (bit_at(s, j)) out[j] = '1';
  return out;
}

BasisLabel label_from_string(const std::string& bits) {
  require(!bits.empty() && bits.size() <= kMaxSites,
          "bit string length out of range");
  BasisLabel s = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    require(bits[j] == '0' || bits[j] == '1', "bit string must be 0/1");
    if (bits[j] == '1') s |= BasisLabel{1} << j;
  }
  return s;
}

}  // namespace dr54
