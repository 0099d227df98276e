#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dr54/basis.hpp"
#include "dr54/hardcore.hpp"
#include "dr54/linalg.hpp"

namespace dr54 {

// Hard-core sector of a three-site pattern set: E marks compatibility with
// even-dimer states, O with odd-dimer states.
enum class Sector { E, O };

// Where a decoration layer sits in the period. The layer after the even
// Rule-54 half-step must be invisible on odd-dimer states and therefore uses
// sector-O projectors; the layer after the odd half-step uses sector E.
enum class Stage { AfterEven, AfterOdd };

constexpr Sector stage_sector(Stage stage) {
  return stage == Stage::AfterEven ? Sector::O : Sector::E;
}

constexpr const char* to_string(Stage stage) {
  return stage == Stage::AfterEven ? "after-even" : "after-odd";
}

// Pattern index p = tauL*4 + tauC*2 + tauR for the bits at sites
// (center-1, center, center+1); "011" is p = 3.
int pattern_at(BasisLabel s, int center, int n_sites);
std::string pattern_to_string(int p);
int pattern_from_string(const std::string& s);

// Set of allowed three-site patterns at one center, stored as a bitmask over
// pattern indices 0..7.
struct PatternSet {
  int center = 0;
  Sector sector = Sector::E;
  std::uint8_t allowed = 0;

  bool is_allowed(int p) const { return (allowed >> p) & 1u; }
  int allowed_count() const;
  std::vector<int> forbidden() const;  // ascending pattern indices
};

// The literal hard-core pattern sets: even center, sector E -> {000,100,011};
// odd center, sector E -> {000,001,110}; sector O swaps the two.
PatternSet allowed_patterns(int center, Sector mu);

// Diagonal 0/1 projector onto the forbidden patterns of the set.
Matrix8 forbidden_projector(const PatternSet& set);
Matrix8 local_forbidden_projector(int center, Sector mu);

// True iff every local triplet of s is allowed for the sector; coincides with
// membership in the even- (resp. odd-) dimer embedding image.
bool sector_membership(BasisLabel s, Sector mu, int n_sites);

// Per-center allowed sets protecting a single translation orbit: the pattern
// set at center c collects the triplets occurring at (c-1, c, c+1) over the
// orbit's trajectory states at that stage (odd-dimer states for the
// after-even layer, even-dimer states for the after-odd layer).
std::vector<PatternSet> target_orbit_patterns(const OrbitRecord& orbit,
                                              Stage stage);

}  // namespace dr54
