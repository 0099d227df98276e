#include "dr54/scars.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace dr54 {

ScarState orbit_fourier_state(const OrbitRecord& orbit, int m, int n_sites) {
  const int p = orbit.period;
  require(0 <= m && m < p, "orbit_fourier_state: Fourier index out of range");
  require(n_sites == 2 * orbit.representative.length,
          "orbit_fourier_state: orbit length does not match n_sites");
  ScarState scar;
  scar.orbit = orbit;
  scar.fourier_index = m;
  scar.eigenphase = 2.0 * std::numbers::pi * m / p;
  scar.vector = StateVector::Zero(dim_for_sites(n_sites));
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  for (int t = 0; t < p; ++t) {
    const double arg = -2.0 * std::numbers::pi * m * t / p;
    scar.vector[embed_even(orbit.members[t])] = std::polar(norm, arg);
  }
  return scar;
}

std::vector<ScarState> all_scars(int n_sites) {
  require(n_sites % 2 == 0, "all_scars: n_sites must be even");
  std::vector<ScarState> scars;
  for (const OrbitRecord& orbit : decompose_orbits(n_sites / 2))
    for (int m = 0; m < orbit.period; ++m)
      scars.push_back(orbit_fourier_state(orbit, m, n_sites));
  return scars;
}

double verify_scar_eigenstate(const DenseUnitary& u, const ScarState& scar) {
  require(u.rows() == scar.vector.size(),
          "verify_scar_eigenstate: dimension mismatch");
  return (u * scar.vector - std::polar(1.0, scar.eigenphase) * scar.vector)
      .norm();
}

EntropyReport entanglement_entropy(const StateVector& psi, int cut,
                                   int n_sites) {
  require(psi.size() == static_cast<Eigen::Index>(dim_for_sites(n_sites)),
          "entanglement_entropy: dimension mismatch");
  require(1 <= cut && cut < n_sites, "entanglement_entropy: cut out of range");
  require(is_normalized(psi), "entanglement_entropy: unnormalized input");

  // Sites 0..cut-1 are the low bits, so the amplitude vector is already the
  // column-major matrix psi[a + b*2^cut].
  const auto rows = static_cast<Eigen::Index>(dim_for_sites(cut));
  const auto cols = static_cast<Eigen::Index>(dim_for_sites(n_sites - cut));
  const Eigen::Map<const Eigen::MatrixXcd> m(psi.data(), rows, cols);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);

  EntropyReport report;
  report.cut = cut;
  report.singular_values = svd.singularValues();
  double s_vn = 0.0, purity = 0.0;
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
    const double w = report.singular_values[i] * report.singular_values[i];
    if (w > 1e-14) {
      s_vn -= w * std::log(w);
      purity += w * w;
    }
    if (report.singular_values[i] > 1e-10) ++report.schmidt_rank;
  }
  // Schmidt weights can exceed 1 by an ulp; clamp the resulting -1e-16.
  ensure(s_vn > -1e-12, "entanglement_entropy: negative entropy");
  report.von_neumann = std::max(0.0, s_vn);
  report.renyi2 = std::max(0.0, -std::log(purity));
  const double bound = std::min(cut, n_sites - cut) * std::log(2.0);
  ensure(report.von_neumann <= bound + 1e-9,
         "entanglement_entropy: entropy above |A| log 2");
  return report;
}

std::vector<ScarEntropyRow> scar_entropy_table(int n_sites,
                                               const DecorationSpec& spec) {
  require(n_sites % 2 == 0 && n_sites <= 12,
          "scar_entropy_table: even n_sites <= 12 required");
  const DenseUnitary u = build_floquet(spec, n_sites);

  // Under target-orbit protection only the target orbit's scars are
  // eigenstates; the analytic entropies still cover every orbit.
  const bool full = spec.scope == ProtectionScope::FullSector;
  const auto orbits = decompose_orbits(n_sites / 2);
  CoarseConfig target_rep;
  if (!full) target_rep = find_orbit(orbits, spec.target_orbit).representative;
  std::vector<ScarEntropyRow> rows;
  for (const OrbitRecord& orbit : orbits) {
    const bool protected_orbit = full || orbit.representative == target_rep;
    for (int m = 0; m < orbit.period; ++m) {
      const ScarState scar = orbit_fourier_state(orbit, m, n_sites);
      if (protected_orbit) {
        const double residual = verify_scar_eigenstate(u, scar);
        ensure(residual < 1e-10,
               "scar_entropy_table: eigenstate residual contract violated");
      }
      const EntropyReport entropy =
          entanglement_entropy(scar.vector, n_sites / 2, n_sites);
      ensure(entropy.von_neumann <= std::log(orbit.period) + 1e-9,
             "scar_entropy_table: entropy exceeds log p");
      rows.push_back(ScarEntropyRow{orbit.representative.to_string(),
                                    orbit.period, m, scar.eigenphase,
                                    entropy.von_neumann, entropy.renyi2,
                                    entropy.schmidt_rank});
    }
  }
  return rows;
}

}  // namespace dr54
