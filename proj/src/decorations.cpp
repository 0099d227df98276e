#include "dr54/decorations.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "dr54/digest.hpp"
#include "dr54/rule54.hpp"

namespace dr54 {

namespace {

// Stream tags keying the per-gate randomness (see rng.hpp).
constexpr std::uint64_t kHermitianStream = 1;
constexpr std::uint64_t kThetaStream = 2;

constexpr std::uint64_t stage_tag(Stage stage) {
  return stage == Stage::AfterEven ? 0 : 1;
}

}  // namespace

const char* to_string(DecorationMode mode) {
  switch (mode) {
    case DecorationMode::None: return "none";
    case DecorationMode::RandomProjected: return "random-projected";
    case DecorationMode::DiagonalPhase: return "diagonal-phase";
  }
  return "none";
}

const char* to_string(ProtectionScope scope) {
  return scope == ProtectionScope::FullSector ? "full-sector" : "target-orbit";
}

DecorationMode decoration_mode_from_string(const std::string& s) {
  if (s == "none") return DecorationMode::None;
  if (s == "random-projected") return DecorationMode::RandomProjected;
  if (s == "diagonal-phase") return DecorationMode::DiagonalPhase;
  throw std::invalid_argument("unknown decoration mode: " + s);
}

ProtectionScope protection_scope_from_string(const std::string& s) {
  if (s == "full-sector") return ProtectionScope::FullSector;
  if (s == "target-orbit") return ProtectionScope::TargetOrbit;
  throw std::invalid_argument("unknown protection scope: " + s);
}

Matrix8 sample_local_hermitian(SplitMix64& rng) {
  Matrix8 b;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      b(i, j) = Complex(re, im);
    }
  return (b + b.adjoint()) / 2.0;
}

Matrix8 decoration_gate(const PatternSet& set, const Matrix8& hermitian,
                        double lambda) {
  require(max_abs(hermitian - hermitian.adjoint()) < 1e-14,
          "decoration_gate: generator must be Hermitian");
  const std::vector<int> forb = set.forbidden();
  const int k = static_cast<int>(forb.size());
  Matrix8 gate = Matrix8::Identity();
  if (k == 0 || lambda == 0.0) return gate;
  // P A P is the forbidden block of A padded with zeros, so the exponential
  // is the identity on allowed patterns and exp(i lambda A_ff) on the block.
  Eigen::MatrixXcd block(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) block(i, j) = hermitian(forb[i], forb[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
  Eigen::VectorXcd phases(k);
  for (int i = 0; i < k; ++i)
    phases[i] = std::polar(1.0, lambda * es.eigenvalues()[i]);
  const Eigen::MatrixXcd w = es.eigenvectors() * phases.asDiagonal() *
                             es.eigenvectors().adjoint();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gate(forb[i], forb[j]) = w(i, j);
  return gate;
}

Matrix8 decoration_gate(int center, Sector mu, const Matrix8& hermitian,
                        double lambda) {
  return decoration_gate(allowed_patterns(center, mu), hermitian, lambda);
}

Matrix8 diagonal_decoration_gate(const PatternSet& set,
                                 const std::map<int, double>& theta) {
  Matrix8 gate = Matrix8::Identity();
  for (const auto& [pattern, value] : theta) {
    require(0 <= pattern && pattern < 8,
            "diagonal_decoration_gate: pattern index out of range");
    require(!set.is_allowed(pattern),
            "diagonal_decoration_gate: phase supplied for an allowed pattern");
    gate(pattern, pattern) = std::polar(1.0, value);
  }
  return gate;
}

Matrix8 diagonal_decoration_gate(int center, Sector mu,
                                 const std::map<int, double>& theta) {
  return diagonal_decoration_gate(allowed_patterns(center, mu), theta);
}

std::map<int, double> resolve_theta(const DecorationSpec& spec, Stage stage,
                                    const PatternSet& set) {
  std::map<int, double> theta;
  if (!spec.theta.empty()) {
    for (const ThetaEntry& entry : spec.theta) {
      if (entry.stage != stage || entry.center != set.center) continue;
      require(!set.is_allowed(entry.pattern),
              "theta table names an allowed pattern");
      theta[entry.pattern] = entry.value;
    }
    return theta;
  }
  SplitMix64 rng(derive_stream(spec.seed, kThetaStream, stage_tag(stage),
                               static_cast<std::uint64_t>(set.center)));
  for (const int p : set.forbidden())
    theta[p] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return theta;
}

std::vector<PatternSet> layer_pattern_sets(Stage stage,
                                           const DecorationSpec& spec,
                                           int n_sites) {
  if (spec.scope == ProtectionScope::TargetOrbit) {
    require(!spec.target_orbit.empty(),
            "target-orbit scope requires an orbit representative");
    const auto orbits = decompose_orbits(n_sites / 2);
    return target_orbit_patterns(find_orbit(orbits, spec.target_orbit), stage);
  }
  std::vector<PatternSet> sets;
  sets.reserve(n_sites);
  for (int c = 0; c < n_sites; ++c)
    sets.push_back(allowed_patterns(c, stage_sector(stage)));
  return sets;
}

std::vector<LocalGate> decoration_layer_gates(Stage stage,
                                              const DecorationSpec& spec,
                                              int n_sites) {
  std::vector<LocalGate> gates;
  if (spec.mode == DecorationMode::None) return gates;
  const double lambda =
      stage == Stage::AfterEven ? spec.lambda_e : spec.lambda_o;
  const std::vector<PatternSet> sets = layer_pattern_sets(stage, spec, n_sites);
  gates.reserve(n_sites);
  for (int c = 0; c < n_sites; ++c) {
    Matrix8 mat;
    if (spec.mode == DecorationMode::RandomProjected) {
      SplitMix64 rng(derive_stream(spec.seed, kHermitianStream,
                                   stage_tag(stage),
                                   static_cast<std::uint64_t>(c)));
      mat = decoration_gate(sets[c], sample_local_hermitian(rng), lambda);
    } else {
      mat = diagonal_decoration_gate(sets[c], resolve_theta(spec, stage,
                                                            sets[c]));
    }
    gates.push_back(LocalGate{c, mat});
  }
  return gates;
}

void apply_gates(const std::vector<LocalGate>& gates, StateVector& psi,
                 int n_sites) {
  for (const LocalGate& g : gates)
    apply_three_site_gate(psi, g.mat, g.center, n_sites);
}

void apply_gates(const std::vector<LocalGate>& gates, DenseUnitary& m,
                 int n_sites) {
  for (const LocalGate& g : gates)
    apply_three_site_gate(m, g.mat, g.center, n_sites);
}

DenseUnitary decoration_layer(Stage stage, const DecorationSpec& spec,
                              int n_sites) {
  const auto dim = static_cast<Eigen::Index>(dim_for_sites(n_sites));
  DenseUnitary m = DenseUnitary::Identity(dim, dim);
  apply_gates(decoration_layer_gates(stage, spec, n_sites), m, n_sites);
  return m;
}

namespace {

// M <- P * M, column by column.
void permute_rows(const PermutationMap& p, DenseUnitary& m,
                  StateVector& scratch) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (std::size_t s = 0; s < p.dim(); ++s) scratch[p.image[s]] = m(s, j);
    m.col(j) = scratch;
  }
}

}  // namespace

std::string spec_fingerprint(const DecorationSpec& spec) {
  std::string s = std::string("mode=") + to_string(spec.mode) +
                  ";lambda_e=" + format_double(spec.lambda_e) +
                  ";lambda_o=" + format_double(spec.lambda_o) +
                  ";seed=" + std::to_string(spec.seed) +
                  ";scope=" + to_string(spec.scope) +
                  ";orbit=" + spec.target_orbit;
  for (const ThetaEntry& t : spec.theta) {
    s += ";theta:" + std::string(to_string(t.stage)) + ":" +
         std::to_string(t.center) + ":" + pattern_to_string(t.pattern) + "=" +
         format_double(t.value);
  }
  return s;
}

DenseUnitary build_floquet(const DecorationSpec& spec, int n_sites) {
  require(n_sites % 2 == 0 && 4 <= n_sites && n_sites <= 14,
          "build_floquet: n_sites must be even, 4 <= N <= 14");
  const auto dim = static_cast<Eigen::Index>(dim_for_sites(n_sites));
  const PermutationMap even = layer_permutation(Parity::Even, n_sites);
  const PermutationMap odd = layer_permutation(Parity::Odd, n_sites);
  DenseUnitary u = permutation_to_unitary(even);
  StateVector scratch(dim);
  apply_gates(decoration_layer_gates(Stage::AfterEven, spec, n_sites), u,
              n_sites);
  permute_rows(odd, u, scratch);
  apply_gates(decoration_layer_gates(Stage::AfterOdd, spec, n_sites), u,
              n_sites);
  return u;
}

}  // namespace dr54
