#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dr54/linalg.hpp"
#include "dr54/patterns.hpp"
#include "dr54/rng.hpp"

namespace dr54 {

enum class DecorationMode { None, RandomProjected, DiagonalPhase };
enum class ProtectionScope { FullSector, TargetOrbit };

const char* to_string(DecorationMode mode);
const char* to_string(ProtectionScope scope);
DecorationMode decoration_mode_from_string(const std::string& s);
ProtectionScope protection_scope_from_string(const std::string& s);

struct ThetaEntry {
  Stage stage = Stage::AfterEven;
  int center = 0;
  int pattern = 0;
  double value = 0.0;
};

// Full description of the decoration layers for one run. lambda_e / lambda_o
// are the coupling strengths of the after-even / after-odd layers. In
// diagonal-phase mode the per-(center, forbidden-pattern) phases are drawn
// uniformly from [0, 2pi) using the seed unless an explicit theta table is
// supplied, in which case only the listed entries are nonzero.
struct DecorationSpec {
  DecorationMode mode = DecorationMode::None;
  double lambda_e = 0.0;
  double lambda_o = 0.0;
  std::uint64_t seed = 0;
  ProtectionScope scope = ProtectionScope::FullSector;
  std::string target_orbit;        // orbit representative, TargetOrbit only
  std::vector<ThetaEntry> theta;   // explicit diagonal phases (optional)
};

// B has i.i.d. standard complex Gaussian entries (unit variance per real
// component, drawn row-major, re before im); returns (B + B†)/2.
Matrix8 sample_local_hermitian(SplitMix64& rng);

// exp(i*lambda*P A P) for P the forbidden projector of the set. Allowed
// rows and columns are exactly identity; the forbidden block is exponentiated
// through its Hermitian eigendecomposition.
Matrix8 decoration_gate(const PatternSet& set, const Matrix8& hermitian,
                        double lambda);
Matrix8 decoration_gate(int center, Sector mu, const Matrix8& hermitian,
                        double lambda);

// Diagonal gate: phase 1 on allowed patterns, e^{i theta_tau} on forbidden
// ones. theta maps pattern index -> phase and may only name forbidden
// patterns; missing forbidden patterns get phase 1.
Matrix8 diagonal_decoration_gate(const PatternSet& set,
                                 const std::map<int, double>& theta);
Matrix8 diagonal_decoration_gate(int center, Sector mu,
                                 const std::map<int, double>& theta);

// Resolved diagonal phases for one center of one layer (seed-derived unless
// the spec carries an explicit table). Keys are forbidden pattern indices.
std::map<int, double> resolve_theta(const DecorationSpec& spec, Stage stage,
                                    const PatternSet& set);

// Per-center allowed sets for a layer under the spec's protection scope.
std::vector<PatternSet> layer_pattern_sets(Stage stage,
                                           const DecorationSpec& spec,
                                           int n_sites);

struct LocalGate {
  int center = 0;
  Matrix8 mat;
};

// The decoration layer as an ordered gate list, center 0 first.
std::vector<LocalGate> decoration_layer_gates(Stage stage,
                                              const DecorationSpec& spec,
                                              int n_sites);

void apply_gates(const std::vector<LocalGate>& gates, StateVector& psi,
                 int n_sites);
void apply_gates(const std::vector<LocalGate>& gates, DenseUnitary& m,
                 int n_sites);

DenseUnitary decoration_layer(Stage stage, const DecorationSpec& spec,
                              int n_sites);

// Dense decorated Floquet unitary D_o U_o D_e U_e.
DenseUnitary build_floquet(const DecorationSpec& spec, int n_sites);

// Canonical one-line rendering of a spec; its hash goes into run manifests
// and compiled-circuit metadata.
std::string spec_fingerprint(const DecorationSpec& spec);

}  // namespace dr54
