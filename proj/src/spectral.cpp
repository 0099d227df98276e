#include "dr54/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "dr54/hardcore.hpp"

namespace dr54 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta == kTwoPi ? 0.0 : theta;
}

double kahan_sum(const Eigen::VectorXd& v) {
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double y = v[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

FloquetSpectrum eigendecompose_unitary(const DenseUnitary& u) {
  require(u.rows() == u.cols() && u.rows() >= 1,
          "eigendecompose_unitary: square matrix required");
  const double uerr = unitarity_error(u);
  require(uerr < 1e-10, "eigendecompose_unitary: input is not unitary "
                        "(max |U†U - I| = " + std::to_string(uerr) + ")");
  const Eigen::Index n = u.rows();

  // Schur triangularization of a normal matrix: the Schur basis is an
  // orthonormal eigenbasis and the eigenvalues sit on the diagonal.
  Eigen::ComplexSchur<DenseUnitary> schur(u, /*computeU=*/true);
  ensure(schur.info() == Eigen::Success,
         "eigendecompose_unitary: Schur iteration failed");

  FloquetSpectrum out;
  out.vectors = schur.matrixU();
  out.phases.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.phases[i] = wrap_phase(std::arg(schur.matrixT()(i, i)));

  // Sort by phase, carrying the eigenvector columns along.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return out.phases[a] < out.phases[b];
  });
  Eigen::VectorXd sorted_phases(n);
  DenseUnitary sorted_vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sorted_phases[i] = out.phases[order[i]];
    sorted_vectors.col(i) = out.vectors.col(order[i]);
  }
  out.phases = std::move(sorted_phases);
  out.vectors = std::move(sorted_vectors);

  DenseUnitary residual_mat = u * out.vectors;
  for (Eigen::Index i = 0; i < n; ++i)
    residual_mat.col(i) -= std::polar(1.0, out.phases[i]) * out.vectors.col(i);
  out.residuals.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.residuals[i] = residual_mat.col(i).norm();
  out.max_residual = out.residuals.maxCoeff();
  ensure(out.max_residual < 1e-9,
         "eigendecompose_unitary: residual contract violated");
  return out;
}

double protected_weight(const StateVector& v, int n_sites) {
  require(n_sites % 2 == 0, "protected_weight: n_sites must be even");
  double w = 0.0;
  for (const BasisLabel s : protected_labels_even(n_sites / 2))
    w += std::norm(v[s]);
  return w;
}

Eigen::VectorXd protected_weights(const FloquetSpectrum& spectrum,
                                  int n_sites) {
  const auto labels = protected_labels_even(n_sites / 2);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(spectrum.vectors.cols());
  for (Eigen::Index i = 0; i < spectrum.vectors.cols(); ++i)
    for (const BasisLabel s : labels) w[i] += std::norm(spectrum.vectors(s, i));
  return w;
}

DenseUnitary bulk_block(const DenseUnitary& u, int n_sites) {
  const auto dim = static_cast<Eigen::Index>(dim_for_sites(n_sites));
  require(u.rows() == dim && u.cols() == dim,
          "bulk_block: dimension mismatch");
  const std::vector<BasisLabel> prot = protected_labels_even(n_sites / 2);
  std::vector<bool> is_protected(dim, false);
  for (const BasisLabel s : prot) is_protected[s] = true;
  std::vector<Eigen::Index> bulk;
  bulk.reserve(dim - static_cast<Eigen::Index>(prot.size()));
  for (Eigen::Index s = 0; s < dim; ++s)
    if (!is_protected[s]) bulk.push_back(s);

  double off_mass = 0.0;
  for (const BasisLabel p : prot) {
    for (const Eigen::Index b : bulk) {
      off_mass = std::max(off_mass, std::abs(u(b, p)));
      off_mass = std::max(off_mass, std::abs(u(p, b)));
    }
  }
  ensure(off_mass <= 1e-8,
         "bulk_block: off-block mass above 1e-8 signals a broken decoration");

  DenseUnitary block(bulk.size(), bulk.size());
  for (std::size_t j = 0; j < bulk.size(); ++j)
    for (std::size_t i = 0; i < bulk.size(); ++i)
      block(i, j) = u(bulk[i], bulk[j]);
  return block;
}

SpacingSample circular_spacings(const Eigen::VectorXd& phases) {
  const Eigen::Index n = phases.size();
  require(n >= 2, "circular_spacings: need at least 2 phases");
  Eigen::VectorXd sorted = phases;
  std::sort(sorted.data(), sorted.data() + n);
  Eigen::VectorXd raw(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) raw[i] = sorted[i + 1] - sorted[i];
  raw[n - 1] = sorted[0] + kTwoPi - sorted[n - 1];
  const double mean = kahan_sum(raw) / static_cast<double>(n);
  SpacingSample sample;
  sample.s = raw / mean;
  return sample;
}

double wigner_beta2_density(double s) {
  require(s >= 0.0, "wigner_beta2_density: s must be non-negative");
  const double pi = std::numbers::pi;
  return 32.0 / (pi * pi) * s * s * std::exp(-4.0 * s * s / pi);
}

double wigner_beta2_cdf(double s) {
  if (s <= 0.0) return 0.0;
  const double pi = std::numbers::pi;
  return std::erf(2.0 * s / std::sqrt(pi)) -
         (4.0 * s / pi) * std::exp(-4.0 * s * s / pi);
}

double poisson_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

double page_value(int d_a, int d_b) {
  require(2 <= d_a, "page_value: d_A >= 2 required");
  require(d_a <= d_b, "page_value: d_A <= d_B required");
  // Sum ascending in 1/k (small terms first) for accuracy.
  double sum = 0.0;
  for (std::int64_t k = std::int64_t{d_a} * d_b; k > d_b; --k)
    sum += 1.0 / static_cast<double>(k);
  return sum - (d_a - 1.0) / (2.0 * d_b);
}

double spacing_ks_distance(const SpacingSample& sample, SpacingReference ref) {
  const Eigen::Index n = sample.s.size();
  require(n >= 1, "spacing_ks_distance: empty sample");
  Eigen::VectorXd sorted = sample.s;
  std::sort(sorted.data(), sorted.data() + n);
  const auto cdf = ref == SpacingReference::Beta2 ? wigner_beta2_cdf
                                                  : poisson_cdf;
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace dr54
