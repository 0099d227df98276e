#pragma once

#include <Eigen/Dense>
#include <complex>

#include "dr54/basis.hpp"

namespace dr54 {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using DenseUnitary = Eigen::MatrixXcd;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;

inline double max_abs(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// max |U†U - I|; the standard unitarity contract used throughout.
double unitarity_error(const DenseUnitary& u);

inline bool is_normalized(const StateVector& psi, double tol = 1e-10) {
  return std::abs(psi.norm() - 1.0) < tol;
}

StateVector basis_state(std::size_t dim, BasisLabel s);

// Applies an 8x8 gate on the triplet (center-1, center, center+1) mod
// n_sites. The 8x8 matrix is indexed by pattern p = tauL*4 + tauC*2 + tauR,
// where (tauL, tauC, tauR) are the bits at sites (center-1, center, center+1).
void apply_three_site_gate(StateVector& psi, const Matrix8& gate, int center,
                           int n_sites);

// Same gate applied to every column (left multiplication by the embedding).
void apply_three_site_gate(DenseUnitary& m, const Matrix8& gate, int center,
                           int n_sites);

}  // namespace dr54
