#include "dr54/dynamics.hpp"

#include <cmath>

#include "dr54/scars.hpp"
#include "dr54/spectral.hpp"

namespace dr54 {

FloquetOperator FloquetOperator::build(const DecorationSpec& spec,
                                       int n_sites) {
  FloquetOperator op;
  op.n_sites = n_sites;
  if (spec.mode == DecorationMode::None) {
    op.perm = floquet_permutation(n_sites);
  } else {
    op.dense = build_floquet(spec, n_sites);
  }
  return op;
}

FloquetOperator FloquetOperator::from_dense(DenseUnitary u) {
  FloquetOperator op;
  op.n_sites = static_cast<int>(std::log2(static_cast<double>(u.rows())) + 0.5);
  require(u.rows() == static_cast<Eigen::Index>(dim_for_sites(op.n_sites)),
          "FloquetOperator: dimension is not a power of two");
  op.dense = std::move(u);
  return op;
}

StateVector FloquetOperator::apply(const StateVector& psi) const {
  if (perm) return apply_permutation(*perm, psi);
  return *dense * psi;
}

TrackingTargets orbit_targets(const OrbitRecord& orbit) {
  TrackingTargets targets;
  targets.period = orbit.period;
  targets.members.reserve(orbit.period);
  for (const CoarseConfig& member : orbit.members)
    targets.members.push_back(embed_even(member));
  return targets;
}

BitstringProbabilities bitstring_probabilities(const StateVector& psi,
                                               const TrackingTargets& targets,
                                               int t) {
  require(t >= 0, "bitstring_probabilities: t must be non-negative");
  const auto dim = static_cast<std::size_t>(psi.size());
  BitstringProbabilities probs;
  for (const BasisLabel x : targets.members) {
    require(x < dim, "bitstring_probabilities: target label out of range");
    probs.p_orbit += std::norm(psi[x]);
  }
  probs.p_track = std::norm(psi[targets.predicted(t)]);
  probs.p_ret = std::norm(psi[targets.initial()]);
  return probs;
}

Eigen::VectorXd dimer_density(const StateVector& psi, int n_sites) {
  require(n_sites % 2 == 0, "dimer_density: n_sites must be even");
  require(psi.size() == static_cast<Eigen::Index>(dim_for_sites(n_sites)),
          "dimer_density: dimension mismatch");
  const int half = n_sites / 2;
  Eigen::VectorXd density = Eigen::VectorXd::Zero(half);
  for (Eigen::Index s = 0; s < psi.size(); ++s) {
    const double w = std::norm(psi[s]);
    if (w == 0.0) continue;
    for (int r = 0; r < half; ++r) {
      const auto label = static_cast<BasisLabel>(s);
      if (bit_at(label, 2 * r) && bit_at(label, 2 * r + 1)) density[r] += w;
    }
  }
  return density;
}

Trajectory evolve(const FloquetOperator& op, const StateVector& psi0,
                  int t_max, const TrackingTargets& targets, int cut) {
  require(t_max >= 1, "evolve: t_max must be at least 1");
  require(is_normalized(psi0), "evolve: initial state must be normalized");
  Trajectory traj;
  traj.records.reserve(t_max + 1);
  StateVector psi = psi0;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) {
      psi = op.apply(psi);
      ensure(std::abs(psi.norm() - 1.0) < 1e-10 * t,
             "evolve: trajectory norm drifted beyond contract");
    }
    TrajectoryRecord rec;
    rec.t = t;
    rec.s_half = entanglement_entropy(psi, cut, op.n_sites).von_neumann;
    rec.fidelity = std::abs(psi0.dot(psi));
    const BitstringProbabilities probs =
        bitstring_probabilities(psi, targets, t);
    rec.p_track = probs.p_track;
    rec.p_ret = probs.p_ret;
    rec.p_orbit = probs.p_orbit;
    rec.dimer = dimer_density(psi, op.n_sites);
    traj.records.push_back(std::move(rec));
  }
  return traj;
}

StateVector partial_overlap_state(const StateVector& scar,
                                  const StateVector& outside, double w,
                                  int n_sites) {
  require(scar.size() == outside.size(),
          "partial_overlap_state: dimension mismatch");
  require(0.0 <= w && w <= 1.0, "partial_overlap_state: w must be in [0,1]");
  require(is_normalized(scar) && is_normalized(outside),
          "partial_overlap_state: inputs must be normalized");
  require(std::abs(scar.dot(outside)) <= 1e-10,
          "partial_overlap_state: inputs are not orthogonal");
  require(protected_weight(outside, n_sites) <= 1e-10,
          "partial_overlap_state: outside state has protected-sector weight");
  StateVector psi = std::sqrt(w) * scar + std::sqrt(1.0 - w) * outside;
  psi.normalize();
  return psi;
}

BasisLabel default_outside_label(int n_sites) {
  require(n_sites >= 4, "default_outside_label: n_sites >= 4 required");
  return BasisLabel{1};
}

}  // namespace dr54
