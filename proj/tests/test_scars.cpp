#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dr54/rule54.hpp"
#include "dr54/scars.hpp"

using namespace dr54;

namespace {

DecorationSpec random_spec(std::uint64_t seed) {
  DecorationSpec spec;
  spec.mode = DecorationMode::RandomProjected;
  spec.lambda_e = spec.lambda_o = 0.75;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("orbit-Fourier states have the stated support and amplitudes") {
  const int n = 10;
  const auto orbits = decompose_orbits(5);

  const ScarState vacuum = orbit_fourier_state(orbits[0], 0, n);
  CHECK(vacuum.eigenphase == 0.0);
  CHECK(std::abs(vacuum.vector[0] - 1.0) == 0.0);  // |0...0>
  CHECK(vacuum.vector.norm() == 1.0);

  const ScarState soliton = orbit_fourier_state(orbits[1], 0, n);
  int support = 0;
  for (Eigen::Index s = 0; s < soliton.vector.size(); ++s) {
    if (std::abs(soliton.vector[s]) == 0.0) continue;
    ++support;
    CHECK(std::abs(soliton.vector[s]) ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  }
  CHECK(support == 5);
  // m=0 is the uniform superposition of the five shifted product states.
  for (const CoarseConfig& member : orbits[1].members)
    CHECK(std::abs(soliton.vector[embed_even(member)] -
                   1.0 / std::sqrt(5.0)) < 1e-15);

  CHECK_THROWS_AS(orbit_fourier_state(orbits[1], 5, n), std::invalid_argument);
  CHECK_THROWS_AS(orbit_fourier_state(orbits[1], -1, n), std::invalid_argument);
}

TEST_CASE("scar family is complete and orthonormal") {
  const int n = 10;
  const auto scars = all_scars(n);
  REQUIRE(scars.size() == 11);  // count_hardcore(5)
  for (std::size_t i = 0; i < scars.size(); ++i) {
    for (std::size_t j = 0; j < scars.size(); ++j) {
      const Complex overlap = scars[i].vector.dot(scars[j].vector);
      if (i == j)
        CHECK(std::abs(overlap - 1.0) < 1e-12);
      else
        CHECK(std::abs(overlap) < 1e-12);
    }
  }
}

TEST_CASE("scars are exact eigenstates of decorated and bare circuits") {
  const int n = 10;
  const DenseUnitary decorated = build_floquet(random_spec(1), n);
  const DenseUnitary bare = permutation_to_unitary(floquet_permutation(n));
  const ScarState vacuum = all_scars(n)[0];
  CHECK(verify_scar_eigenstate(decorated, vacuum) < 1e-12);
  for (const ScarState& scar : all_scars(n)) {
    CHECK(verify_scar_eigenstate(decorated, scar) < 1e-10);
    CHECK(verify_scar_eigenstate(bare, scar) < 1e-10);
    // Measured phase of U on the scar equals the analytic eigenphase.
    const StateVector image = decorated * scar.vector;
    const Complex phase = scar.vector.dot(image);
    CHECK(std::abs(phase - std::polar(1.0, scar.eigenphase)) < 1e-10);
  }
}

TEST_CASE("entanglement entropy basics") {
  const int n = 8;
  const auto dim = dim_for_sites(n);

  const EntropyReport product =
      entanglement_entropy(basis_state(dim, 0b1011), 4, n);
  CHECK(product.von_neumann == 0.0);
  CHECK(product.renyi2 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(product.schmidt_rank == 1);

  // Bell pair between sites 0 and N/2 embedded in zeros.
  StateVector bell = StateVector::Zero(dim);
  bell[0] = 1.0 / std::sqrt(2.0);
  bell[(BasisLabel{1} << 0) | (BasisLabel{1} << 4)] = 1.0 / std::sqrt(2.0);
  const EntropyReport pair = entanglement_entropy(bell, 4, n);
  CHECK(pair.von_neumann == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(pair.schmidt_rank == 2);

  StateVector unnormalized = StateVector::Zero(dim);
  unnormalized[0] = 0.5;
  CHECK_THROWS_AS(entanglement_entropy(unnormalized, 4, n),
                  std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy(bell, 0, n), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_entropy(bell, 8, n), std::invalid_argument);
}

TEST_CASE("scar entropy obeys the log-orbit bound on every cut") {
  const int n = 10;
  for (const ScarState& scar : all_scars(n)) {
    for (int cut = 1; cut < n; ++cut) {
      const EntropyReport report =
          entanglement_entropy(scar.vector, cut, n);
      CHECK(report.von_neumann <= std::log(scar.orbit.period) + 1e-9);
      CHECK(report.renyi2 <= std::log(scar.orbit.period) + 1e-9);
      CHECK(report.schmidt_rank <= scar.orbit.period);
    }
  }
}

TEST_CASE("scar entropy table at N=10") {
  const auto rows = scar_entropy_table(10, random_spec(2));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0].orbit_rep == "00000");
  CHECK(rows[0].s_vn == 0.0);
  CHECK(rows[0].schmidt_rank == 1);
  const double log5 = std::log(5.0);
  for (const ScarEntropyRow& row : rows) {
    CHECK(row.s_vn <= log5 + 1e-9);
    CHECK(row.s_renyi2 <= std::log(row.period) + 1e-9);
    CHECK(row.eigenphase ==
          doctest::Approx(2.0 * std::numbers::pi * row.m / row.period)
              .epsilon(1e-15));
  }
}

TEST_CASE("scar entropy table under target-orbit protection") {
  DecorationSpec spec = random_spec(3);
  spec.scope = ProtectionScope::TargetOrbit;
  spec.target_orbit = "1000";
  const auto rows = scar_entropy_table(8, spec);
  CHECK(rows.size() == 7);
}
