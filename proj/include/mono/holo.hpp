#pragma once

#include "mono/scatter.hpp"

namespace mono {

/// Holomorphic structure data in the band gauge: del-bar coefficient a,
/// scattering coefficient c (the operator is del_t + c), the t-wrap seam
/// rho(z) with v(0-chart) = rho * v(tau-chart), and the x-wrap degree clutch.
struct HolomorphicData {
  GroupSpec group;
  DomainPtr domain;
  MatrixField a;
  MatrixField c;
  MatrixField rho_seam;            // per-Sigma-site; empty = trivial
  Eigen::MatrixXi clutch_degrees;  // nt x torus_dim, or empty
  std::vector<uint8_t> pinned;     // Dirichlet set for the flow (3D sites)

  int n() const { return group.rep_dim; }
  bool has_seam() const { return !rho_seam.empty(); }
  bool is_pinned(int site) const { return !pinned.empty() && pinned[site] != 0; }
  Matrix clutch_matrix(int it) const;
};

/// Step (i) extension of a meromorphic pair: a is the t=0 slice data pulled
/// back t-independently, c = 0, the monodromy becomes the t-wrap seam, and
/// the singular columns (inside the column mask) are pinned.
HolomorphicData from_pair(const MeromorphicPair& pair);

/// max over unpinned interior sites of ||[del-bar + a, del_t + c]||.
double commutator_residual(const HolomorphicData& holo);

struct HermitianMetric {
  GroupSpec group;
  DomainPtr domain;
  MatrixField h;
};

/// Throws if h is not Hermitian (1e-14), positive definite, or (SUn) has
/// det != 1 at an unmasked site.
void validate_metric(const HermitianMetric& m, const std::vector<uint8_t>& skip);

/// Chern-type field data derived from (holo, h) on the lattice:
/// b = h^{-1}(del h - a^dag h), F_{z zbar} = del a - del-bar b + [b,a],
/// Phi and A_t from the half-point t-derivative of h and c.
struct DerivedFields {
  MatrixField b;
  MatrixField F_sigma;  // omega_Sigma coefficient = -2i F_{z zbar}
  MatrixField higgs;    // unitary pair in the holomorphic frame
  MatrixField A_t;
  MatrixField cov_t_higgs;
};

DerivedFields derive_fields(const HolomorphicData& holo, const HermitianMetric& m);

/// Unitary-gauge extraction via per-site Cholesky frames: returns GaugeData
/// with skew-Hermitian coefficients and the unitary t-wrap seam.
GaugeData to_unitary(const HolomorphicData& holo, const HermitianMetric& m);

/// Hermitian matrix functions (eigensolver based).
Matrix hermitian_exp(const Matrix& X);
Matrix hermitian_log_spd(const Matrix& X);

} // namespace mono
