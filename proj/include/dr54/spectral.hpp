#pragma once

#include <vector>

#include "dr54/linalg.hpp"

namespace dr54 {

// Complete eigensystem of a unitary. Phases are wrapped to [0, 2pi) and
// sorted ascending; vector columns follow the same order. Residuals are
// ||U v - e^{i theta} v|| per eigenpair.
struct FloquetSpectrum {
  Eigen::VectorXd phases;
  DenseUnitary vectors;
  Eigen::VectorXd residuals;
  double max_residual = 0.0;
};

// Eigendecomposition through the complex Schur triangularization; for a
// normal matrix the Schur basis is a genuine orthonormal eigenbasis. Throws
// if the input fails the unitarity contract (max |U†U - I| < 1e-10).
FloquetSpectrum eigendecompose_unitary(const DenseUnitary& u);

// Weight of a normalized vector on the protected even-dimer labels,
// <v|Pi_e|v> for the diagonal 0/1 projector.
double protected_weight(const StateVector& v, int n_sites);

// protected_weight of every eigenvector column.
Eigen::VectorXd protected_weights(const FloquetSpectrum& spectrum,
                                  int n_sites);

// Submatrix of U on the non-protected computational-basis labels. Throws if
// any matrix element connecting the two blocks exceeds 1e-8 (a broken
// decoration), since the restriction is only meaningful when U is
// block-diagonal across the protected sector.
DenseUnitary bulk_block(const DenseUnitary& u, int n_sites);

// Nearest-neighbor spacings of phases on the unit circle (wrap-around term
// included), normalized by their mean.
struct SpacingSample {
  Eigen::VectorXd s;
};

SpacingSample circular_spacings(const Eigen::VectorXd& phases);

// Wigner-surmise density for the beta = 2 (unitary) class,
// P(s) = (32/pi^2) s^2 exp(-4 s^2 / pi), and its CDF.
double wigner_beta2_density(double s);
double wigner_beta2_cdf(double s);
double poisson_cdf(double s);

// Finite-size Page value sum_{k=d_B+1}^{d_A d_B} 1/k - (d_A-1)/(2 d_B),
// natural log convention; requires 2 <= d_A <= d_B.
double page_value(int d_a, int d_b);

enum class SpacingReference { Beta2, Poisson };

// Kolmogorov-Smirnov sup-distance between the empirical CDF of the sample
// and the reference CDF.
double spacing_ks_distance(const SpacingSample& sample, SpacingReference ref);

}  // namespace dr54
