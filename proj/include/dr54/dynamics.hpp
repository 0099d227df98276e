#pragma once

#include <optional>
#include <vector>

#include "dr54/decorations.hpp"
#include "dr54/hardcore.hpp"
#include "dr54/linalg.hpp"
#include "dr54/rule54.hpp"

namespace dr54 {

// One Floquet period, as a pure permutation when the spec is undecorated
// (O(2^N) per application) and as a dense matrix otherwise.
struct FloquetOperator {
  int n_sites = 0;
  std::optional<PermutationMap> perm;
  std::optional<DenseUnitary> dense;

  static FloquetOperator build(const DecorationSpec& spec, int n_sites);
  static FloquetOperator from_dense(DenseUnitary u);

  StateVector apply(const StateVector& psi) const;
  std::size_t dim() const { return dim_for_sites(n_sites); }
};

// Predicted bitstring targets of a protected orbit: x_t is the embedded
// even-dimer label after t periods; the orbit set backs P_orbit.
struct TrackingTargets {
  std::vector<BasisLabel> members;  // embed_even of T^t rep, t = 0..p-1
  int period = 0;

  BasisLabel predicted(int t) const { return members[t % period]; }
  BasisLabel initial() const { return members[0]; }
};

TrackingTargets orbit_targets(const OrbitRecord& orbit);

struct BitstringProbabilities {
  double p_track = 0.0;  // |<x_t|psi>|^2
  double p_ret = 0.0;    // |<x_0|psi>|^2
  double p_orbit = 0.0;  // sum over orbit members
};

BitstringProbabilities bitstring_probabilities(const StateVector& psi,
                                               const TrackingTargets& targets,
                                               int t);

// <d_r> = sum over labels with both bits of the even bond r set, r = 0..L-1.
Eigen::VectorXd dimer_density(const StateVector& psi, int n_sites);

struct TrajectoryRecord {
  int t = 0;
  double s_half = 0.0;
  double fidelity = 0.0;  // |<psi(0)|psi(t)>|
  double p_track = 0.0;
  double p_ret = 0.0;
  double p_orbit = 0.0;
  Eigen::VectorXd dimer;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;  // t = 0..t_max
};

// Stroboscopic evolution by repeated application of one period, recording
// the diagnostics each period. cut is the entropy bipartition (sites
// 0..cut-1); targets define the tracking probabilities.
Trajectory evolve(const FloquetOperator& op, const StateVector& psi0,
                  int t_max, const TrackingTargets& targets, int cut);

// sqrt(w)*scar + sqrt(1-w)*outside, normalized. Throws when the inputs are
// not orthogonal (overlap above 1e-10) or the outside state has weight in
// the protected sector.
StateVector partial_overlap_state(const StateVector& scar,
                                  const StateVector& outside, double w,
                                  int n_sites);

// Default reference product state outside the protected sector: a single 1
// at site 0 (fails sector membership for every N >= 4).
BasisLabel default_outside_label(int n_sites);

}  // namespace dr54
