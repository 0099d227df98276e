#include "dr54/patterns.hpp"

#include <bit>

namespace dr54 {

int pattern_at(BasisLabel s, int center, int n_sites) {
  const int c = wrap_site(center, n_sites);
  return (bit_at(s, wrap_site(c - 1, n_sites)) << 2) | (bit_at(s, c) << 1) |
         bit_at(s, wrap_site(c + 1, n_sites));
}

std::string pattern_to_string(int p) {
  require(0 <= p && p < 8, "pattern index out of range");
  return {char('0' + ((p >> 2) & 1)), char('0' + ((p >> 1) & 1)),
          char('0' + (p & 1))};
}

int pattern_from_string(const std::string& s) {
  require(s.size() == 3, "pattern string must have 3 bits");
  int p = 0;
  for (char c : s) {
    require(c == '0' || c == '1', "pattern string must be 0/1");
    p = (p << 1) | (c - '0');
  }
  return p;
}

int PatternSet::allowed_count() const { return std::popcount(allowed); }

std::vector<int> PatternSet::forbidden() const {
  std::vector<int> out;
  for (int p = 0; p < 8; ++p)
    if (!is_allowed(p)) out.push_back(p);
  return out;
}

namespace {

constexpr std::uint8_t mask_of(int a, int b, int c) {
  return static_cast<std::uint8_t>((1u << a) | (1u << b) | (1u << c));
}

// {000,100,011} and {000,001,110} as pattern-index masks.
constexpr std::uint8_t kEvenDimerSet = mask_of(0, 4, 3);
constexpr std::uint8_t kOddDimerSet = mask_of(0, 1, 6);

}  // namespace

PatternSet allowed_patterns(int center, Sector mu) {
  require(center >= 0, "allowed_patterns: center must be non-negative");
  const bool even_center = center % 2 == 0;
  const bool sector_e = mu == Sector::E;
  PatternSet set{center, mu, 0};
  set.allowed = (even_center == sector_e) ? kEvenDimerSet : kOddDimerSet;
  return set;
}

Matrix8 forbidden_projector(const PatternSet& set) {
  Matrix8 p = Matrix8::Zero();
  for (int q = 0; q < 8; ++q)
    if (!set.is_allowed(q)) p(q, q) = 1.0;
  return p;
}

Matrix8 local_forbidden_projector(int center, Sector mu) {
  return forbidden_projector(allowed_patterns(center, mu));
}

bool sector_membership(BasisLabel s, Sector mu, int n_sites) {
  require(n_sites % 2 == 0, "sector_membership: n_sites must be even");
  for (int c = 0; c < n_sites; ++c) {
    if (!allowed_patterns(c, mu).is_allowed(pattern_at(s, c, n_sites)))
      return false;
  }
  return true;
}

std::vector<PatternSet> target_orbit_patterns(const OrbitRecord& orbit,
                                              Stage stage) {
  const int n_sites = 2 * orbit.representative.length;
  std::vector<PatternSet> sets;
  sets.reserve(n_sites);
  for (int c = 0; c < n_sites; ++c)
    sets.push_back(PatternSet{c, stage_sector(stage), 0});
  for (const CoarseConfig& member : orbit.members) {
    const BasisLabel s = stage == Stage::AfterEven ? embed_odd(member)
                                                   : embed_even(member);
    for (int c = 0; c < n_sites; ++c)
      sets[c].allowed |= std::uint8_t(1u << pattern_at(s, c, n_sites));
  }
  return sets;
}

}  // namespace dr54
