#include "dr54/linalg.hpp"

#include <algorithm>
#include <array>

namespace dr54 {

double unitarity_error(const DenseUnitary& u) {
  require(u.rows() == u.cols(), "unitarity_error: matrix must be square");
  DenseUnitary g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return max_abs(g);
}

StateVector basis_state(std::size_t dim, BasisLabel s) {
  require(s < dim, "basis_state: label out of range");
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  psi[s] = 1.0;
  return psi;
}

namespace {

struct TripletIndexer {
  // Sorted bit positions of the triplet and the masks that re-expand a
  // (N-3)-bit counter into a full label with zeros at those positions.
  std::array<int, 3> sorted{};
  BasisLabel mask_a = 0, mask_b = 0, mask_c = 0, mask_d = 0;
  std::array<BasisLabel, 8> pattern_bits{};
  std::size_t n_bases = 0;

  TripletIndexer(int center, int n_sites) {
    const int qa = wrap_site(center - 1, n_sites);
    const int qb = wrap_site(center, n_sites);
    const int qc = wrap_site(center + 1, n_sites);
    sorted = {qa, qb, qc};
    std::sort(sorted.begin(), sorted.end());
    const int b0 = sorted[0], b1 = sorted[1], b2 = sorted[2];
    const BasisLabel below_b0 = (BasisLabel{1} << b0) - 1;
    const BasisLabel below_b1 = (BasisLabel{1} << (b1 - 1)) - 1;
    const BasisLabel below_b2 = (BasisLabel{1} << (b2 - 2)) - 1;
    mask_a = below_b0;
    mask_b = below_b1 & ~below_b0;
    mask_c = below_b2 & ~below_b1;
    mask_d = ~below_b2;
    for (int p = 0; p < 8; ++p) {
      pattern_bits[p] = (static_cast<BasisLabel>((p >> 2) & 1) << qa) |
                        (static_cast<BasisLabel>((p >> 1) & 1) << qb) |
                        (static_cast<BasisLabel>(p & 1) << qc);
    }
    n_bases = dim_for_sites(n_sites - 3);
  }

  BasisLabel base(std::size_t u) const {
    const auto v = static_cast<BasisLabel>(u);
    return (v & mask_a) | ((v & mask_b) << 1) | ((v & mask_c) << 2) |
           ((v & mask_d) << 3);
  }
};

inline void apply_to_column(Complex* amp, const Matrix8& gate,
                            const TripletIndexer& ix) {
  std::array<Complex, 8> in;
  for (std::size_t u = 0; u < ix.n_bases; ++u) {
    const BasisLabel base = ix.base(u);
    for (int p = 0; p < 8; ++p) in[p] = amp[base | ix.pattern_bits[p]];
    for (int p = 0; p < 8; ++p) {
      Complex acc = 0.0;
      for (int q = 0; q < 8; ++q) acc += gate(p, q) * in[q];
      amp[base | ix.pattern_bits[p]] = acc;
    }
  }
}

}  // namespace

void apply_three_site_gate(StateVector& psi, const Matrix8& gate, int center,
                           int n_sites) {
  require(n_sites >= 4, "apply_three_site_gate: need at least 4 sites");
  require(psi.size() == static_cast<Eigen::Index>(dim_for_sites(n_sites)),
          "apply_three_site_gate: dimension mismatch");
  const TripletIndexer ix(wrap_site(center, n_sites), n_sites);
  apply_to_column(psi.data(), gate, ix);
}

void apply_three_site_gate(DenseUnitary& m, const Matrix8& gate, int center,
                           int n_sites) {
  const auto dim = static_cast<Eigen::Index>(dim_for_sites(n_sites));
  require(n_sites >= 4, "apply_three_site_gate: need at least 4 sites");
  require(m.rows() == dim, "apply_three_site_gate: dimension mismatch");
  const TripletIndexer ix(wrap_site(center, n_sites), n_sites);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    apply_to_column(m.col(j).data(), gate, ix);
}

}  // namespace dr54
