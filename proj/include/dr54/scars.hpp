#pragma once

#include <string>
#include <vector>

#include "dr54/decorations.hpp"
#include "dr54/hardcore.hpp"
#include "dr54/linalg.hpp"

namespace dr54 {

// Orbit-Fourier state: support on the p embedded orbit members with
// amplitudes e^{-2pi i m t / p} / sqrt(p); exact Floquet eigenstate with
// eigenphase 2pi m / p.
struct ScarState {
  OrbitRecord orbit;
  int fourier_index = 0;
  double eigenphase = 0.0;
  StateVector vector;
};

ScarState orbit_fourier_state(const OrbitRecord& orbit, int m, int n_sites);

// All count_hardcore(L) scars of the chain, orbit by orbit, m ascending.
std::vector<ScarState> all_scars(int n_sites);

// ||U v - e^{i 2pi m/p} v||.
double verify_scar_eigenstate(const DenseUnitary& u, const ScarState& scar);

struct EntropyReport {
  int cut = 0;  // subsystem A = sites 0..cut-1
  Eigen::VectorXd singular_values;
  double von_neumann = 0.0;  // nats
  double renyi2 = 0.0;
  int schmidt_rank = 0;  // singular values above 1e-10
};

// Schmidt spectrum across the contiguous cut; Schmidt weights below 1e-14
// are dropped from the entropy sums.
EntropyReport entanglement_entropy(const StateVector& psi, int cut,
                                   int n_sites);

struct ScarEntropyRow {
  std::string orbit_rep;
  int period = 0;
  int m = 0;
  double eigenphase = 0.0;
  double s_vn = 0.0;
  double s_renyi2 = 0.0;
  int schmidt_rank = 0;
};

// Half-chain entropies of every analytic scar. Builds the decorated unitary
// for the spec and checks the eigenstate residual contract (< 1e-10) for
// every orbit the spec protects before reporting.
std::vector<ScarEntropyRow> scar_entropy_table(int n_sites,
                                               const DecorationSpec& spec);

}  // namespace dr54
