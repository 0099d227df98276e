#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dr54/decorations.hpp"
#include "dr54/rule54.hpp"
#include "dr54/spectral.hpp"

using namespace dr54;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> cycle_lengths(const PermutationMap& p) {
  std::vector<int> lengths;
  std::vector<bool> seen(p.dim(), false);
  for (std::size_t s = 0; s < p.dim(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    BasisLabel cur = static_cast<BasisLabel>(s);
    do {
      seen[cur] = true;
      cur = p(cur);
      ++len;
    } while (cur != s);
    lengths.push_back(len);
  }
  return lengths;
}

// Simpson quadrature oracle.
double integrate(double (*f)(double), double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i)
    acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double s_times_density(double s) { return s * wigner_beta2_density(s); }

}  // namespace

TEST_CASE("eigendecomposition of simple unitaries") {
  const FloquetSpectrum id =
      eigendecompose_unitary(DenseUnitary::Identity(8, 8));
  CHECK(id.phases.cwiseAbs().maxCoeff() == 0.0);
  CHECK(id.max_residual < 1e-14);

  std::vector<double> thetas{0.3, 1.7, 2.9, 4.4, 6.1};
  DenseUnitary diag = DenseUnitary::Zero(5, 5);
  for (int i = 0; i < 5; ++i) diag(i, i) = std::polar(1.0, thetas[i]);
  const FloquetSpectrum spectrum = eigendecompose_unitary(diag);
  for (int i = 0; i < 5; ++i)
    CHECK(spectrum.phases[i] == doctest::Approx(thetas[i]).epsilon(1e-12));

  DenseUnitary bad = DenseUnitary::Identity(4, 4) * 1.5;
  CHECK_THROWS_AS(eigendecompose_unitary(bad), std::invalid_argument);
}

TEST_CASE("bare period eigenvalues are roots of unity of cycle orders") {
  const PermutationMap u54 = floquet_permutation(6);
  const std::vector<int> cycles = cycle_lengths(u54);
  const FloquetSpectrum spectrum =
      eigendecompose_unitary(permutation_to_unitary(u54));
  REQUIRE(spectrum.phases.size() == 64);
  CHECK(spectrum.max_residual < 1e-9);
  for (Eigen::Index i = 0; i < spectrum.phases.size(); ++i) {
    bool matches_some_cycle = false;
    for (const int len : cycles) {
      const double turns = spectrum.phases[i] * len / (2.0 * kPi);
      if (std::abs(turns - std::round(turns)) < 1e-8)
        matches_some_cycle = true;
    }
    CHECK(matches_some_cycle);
  }
}

TEST_CASE("protected weight of basis vectors and the trace identity") {
  const int n = 8;
  const auto dim = dim_for_sites(n);
  CHECK(protected_weight(basis_state(dim, 0), n) == 1.0);  // vacuum
  CHECK(protected_weight(basis_state(dim, 1), n) == 0.0);  // outside

  DecorationSpec spec;
  spec.mode = DecorationMode::RandomProjected;
  spec.lambda_e = spec.lambda_o = 0.85;
  spec.seed = 3;
  const FloquetSpectrum spectrum =
      eigendecompose_unitary(build_floquet(spec, n));
  const Eigen::VectorXd weights = protected_weights(spectrum, n);
  CHECK(std::abs(weights.sum() - static_cast<double>(count_hardcore(n / 2))) <
        1e-8);
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    CHECK(weights[i] >= -1e-12);
    CHECK(weights[i] <= 1.0 + 1e-12);
  }
}

TEST_CASE("bulk block dimensions and permutation fast case") {
  DecorationSpec spec;
  spec.mode = DecorationMode::RandomProjected;
  spec.lambda_e = spec.lambda_o = 0.85;
  spec.seed = 1;
  const DenseUnitary u8 = build_floquet(spec, 8);
  const DenseUnitary block8 = bulk_block(u8, 8);
  CHECK(block8.rows() == 256 - 7);
  CHECK(unitarity_error(block8) < 1e-9);

  const DenseUnitary u10 = build_floquet(spec, 10);
  CHECK(bulk_block(u10, 10).rows() == 1024 - 11);

  // Mode none: the bulk block of the bare permutation stays a permutation.
  const DenseUnitary bare = permutation_to_unitary(floquet_permutation(8));
  const DenseUnitary bare_block = bulk_block(bare, 8);
  for (Eigen::Index j = 0; j < bare_block.cols(); ++j) {
    CHECK(bare_block.col(j).cwiseAbs().sum() == 1.0);
    CHECK(bare_block.col(j).cwiseAbs().maxCoeff() == 1.0);
  }

  // A leaky matrix is rejected: swap a protected column with a bulk one.
  DenseUnitary leaky = bare;
  leaky.col(0).swap(leaky.col(1));
  CHECK_THROWS_AS(bulk_block(leaky, 8), std::runtime_error);
}

TEST_CASE("circular spacings close the circle and have unit mean") {
  Eigen::VectorXd equal(4);
  equal << 0.0, kPi / 2, kPi, 3 * kPi / 2;
  const SpacingSample uniform = circular_spacings(equal);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(uniform.s[i] == 1.0);

  Eigen::VectorXd two(2);
  two << 0.0, kPi;
  const SpacingSample pair = circular_spacings(two);
  CHECK(pair.s[0] == 1.0);
  CHECK(pair.s[1] == 1.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  Eigen::VectorXd random_phases(257);
  for (int i = 0; i < random_phases.size(); ++i) random_phases[i] = uni(rng);
  const SpacingSample sample = circular_spacings(random_phases);
  CHECK(std::abs(sample.s.mean() - 1.0) < 1e-12);

  // Raw spacings (recovered below) sum to 2 pi.
  Eigen::VectorXd sorted = random_phases;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  double raw_sum = sorted[0] + 2.0 * kPi - sorted[sorted.size() - 1];
  for (Eigen::Index i = 0; i + 1 < sorted.size(); ++i)
    raw_sum += sorted[i + 1] - sorted[i];
  CHECK(std::abs(raw_sum - 2.0 * kPi) < 1e-12);

  Eigen::VectorXd one(1);
  one << 0.5;
  CHECK_THROWS_AS(circular_spacings(one), std::invalid_argument);
}

TEST_CASE("Wigner beta-2 surmise: values, normalization and CDF") {
  CHECK(wigner_beta2_density(0.0) == 0.0);
  CHECK(wigner_beta2_density(1.0) == doctest::Approx(0.9076).epsilon(1e-4));

  // Quadrature oracle for total mass and mean.
  CHECK(integrate(wigner_beta2_density, 0.0, 12.0, 20000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(s_times_density, 0.0, 12.0, 20000) ==
        doctest::Approx(1.0).epsilon(1e-6));

  // The closed-form CDF matches quadrature of the density.
  for (double s : {0.2, 0.5, 1.0, 1.7, 2.5}) {
    const double by_quadrature = integrate(wigner_beta2_density, 0.0, s, 4000);
    CHECK(wigner_beta2_cdf(s) == doctest::Approx(by_quadrature).epsilon(1e-9));
  }
  CHECK(wigner_beta2_cdf(0.0) == 0.0);
  CHECK(wigner_beta2_cdf(10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("page value") {
  CHECK(page_value(2, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // Direct evaluation oracle for d_A=2, d_B=4.
  double expected = 0.0;
  for (int k = 5; k <= 8; ++k) expected += 1.0 / k;
  expected -= 1.0 / 8.0;
  CHECK(page_value(2, 4) == doctest::Approx(expected).epsilon(1e-15));

  for (int d : {2, 4, 8, 16, 32}) CHECK(page_value(d, d) < std::log(d));
  CHECK_THROWS_AS(page_value(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(page_value(1, 4), std::invalid_argument);
}

TEST_CASE("KS distance against references") {
  // Inverse-transform sampling oracle from the beta-2 CDF.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int n = 100000;
  SpacingSample sample;
  sample.s.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = uni(rng);
    double lo = 0.0, hi = 12.0;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (wigner_beta2_cdf(mid) < u ? lo : hi) = mid;
    }
    sample.s[i] = 0.5 * (lo + hi);
  }
  CHECK(spacing_ks_distance(sample, SpacingReference::Beta2) < 0.01);
  CHECK(spacing_ks_distance(sample, SpacingReference::Poisson) > 0.1);

  // All-equal spacings against Poisson: the sup sits at the step.
  SpacingSample degenerate;
  degenerate.s = Eigen::VectorXd::Ones(1000);
  CHECK(spacing_ks_distance(degenerate, SpacingReference::Poisson) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));

  for (auto ref : {SpacingReference::Beta2, SpacingReference::Poisson}) {
    const double d = spacing_ks_distance(sample, ref);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}
