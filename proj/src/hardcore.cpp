#include "dr54/hardcore.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace dr54 {

namespace {

std::uint32_t cycle_mask(int length) {
  return length == 32 ? ~0u : (std::uint32_t{1} << length) - 1;
}

// 2x2 integer matrix power of the compatibility matrix [[1,1],[1,0]].
std::array<std::int64_t, 4> mat_mul(const std::array<std::int64_t, 4>& a,
                                    const std::array<std::int64_t, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool CoarseConfig::is_hardcore() const {
  const std::uint32_t m = cycle_mask(length);
  const std::uint32_t rot = ((occ << 1) | (occ >> (length - 1))) & m;
  return (occ & ~m) == 0 && (occ & rot) == 0;
}

int CoarseConfig::popcount() const { return std::popcount(occ); }

std::string CoarseConfig::to_string() const {
  std::string out(length, '0');
  for (int r = 0; r < length; ++r)
    if ((occ >> r) & 1u) out[r] = '1';
  return out;
}

CoarseConfig CoarseConfig::from_string(const std::string& s) {
  require(!s.empty() && s.size() <= 24, "occupation string length out of range");
  CoarseConfig a{0, static_cast<int>(s.size())};
  for (std::size_t r = 0; r < s.size(); ++r) {
    require(s[r] == '0' || s[r] == '1', "occupation string must be 0/1");
    if (s[r] == '1') a.occ |= std::uint32_t{1} << r;
  }
  require(a.is_hardcore(), "occupation string violates the hard-core rule");
  return a;
}

std::vector<CoarseConfig> enumerate_hardcore(int length) {
  require(1 <= length && length <= 24, "enumerate_hardcore: 1 <= L <= 24");
  std::vector<CoarseConfig> out;
  for (std::uint32_t occ = 0; occ < (std::uint32_t{1} << length); ++occ) {
    const CoarseConfig a{occ, length};
    if (a.is_hardcore()) out.push_back(a);
  }
  return out;
}

std::int64_t count_hardcore(int length) {
  require(1 <= length && length <= 80, "count_hardcore: 1 <= L <= 80");
  std::array<std::int64_t, 4> acc{1, 0, 0, 1};
  std::array<std::int64_t, 4> base{1, 1, 1, 0};
  int e = length;
  while (e > 0) {
    if (e & 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return acc[0] + acc[3];
}

std::int64_t count_fixed_k(int length, int k) {
  require(length >= 1, "count_fixed_k: L >= 1");
  require(0 <= k && k <= length / 2, "count_fixed_k: k out of range");
  if (k == 0) return 1;
  // L/(L-k) * C(L-k, k); the division is exact.
  return length * binomial(length - k - 1, k - 1) / k;
}

CoarseConfig translate(CoarseConfig a) {
  const std::uint32_t m = cycle_mask(a.length);
  a.occ = ((a.occ << 1) | (a.occ >> (a.length - 1))) & m;
  return a;
}

std::vector<OrbitRecord> decompose_orbits(int length) {
  std::vector<OrbitRecord> orbits;
  std::vector<bool> visited(std::size_t{1} << length, false);
  for (const CoarseConfig& a : enumerate_hardcore(length)) {
    if (visited[a.occ]) continue;
    // Ascending enumeration makes the first unvisited member the orbit
    // minimum, which is the representative.
    OrbitRecord orbit;
    orbit.representative = a;
    CoarseConfig cur = a;
    do {
      visited[cur.occ] = true;
      orbit.members.push_back(cur);
      cur = translate(cur);
    } while (!(cur == a));
    orbit.period = static_cast<int>(orbit.members.size());
    ensure(length % orbit.period == 0, "orbit period must divide L");
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

BasisLabel embed_even(CoarseConfig a) {
  require(a.is_hardcore(), "embed_even: configuration is not hard-core");
  BasisLabel s = 0;
  for (int r = 0; r < a.length; ++r)
    if ((a.occ >> r) & 1u) s |= BasisLabel{0b11} << (2 * r);
  return s;
}

BasisLabel embed_odd(CoarseConfig a) {
  require(a.is_hardcore(), "embed_odd: configuration is not hard-core");
  const int n_sites = 2 * a.length;
  BasisLabel s = 0;
  for (int r = 0; r < a.length; ++r) {
    if ((a.occ >> r) & 1u) {
      s |= BasisLabel{1} << (2 * r + 1);
      s |= BasisLabel{1} << wrap_site(2 * r + 2, n_sites);
    }
  }
  return s;
}

std::vector<BasisLabel> protected_labels_even(int length) {
  std::vector<BasisLabel> labels;
  for (const CoarseConfig& a : enumerate_hardcore(length))
    labels.push_back(embed_even(a));
  std::sort(labels.begin(), labels.end());
  return labels;
}

const OrbitRecord& find_orbit(const std::vector<OrbitRecord>& orbits,
                              const std::string& rep) {
  const CoarseConfig target = CoarseConfig::from_string(rep);
  for (const OrbitRecord& orbit : orbits)
    for (const CoarseConfig& member : orbit.members)
      if (member == target) return orbit;
  throw std::invalid_argument("find_orbit: no orbit contains " + rep);
}

}  // namespace dr54
