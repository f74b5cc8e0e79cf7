#pragma once

#include <memory>
#include <vector>

#include "mono/lie.hpp"

namespace mono {

struct Singularity {
  double t = 0.0;
  Complex z;
  Cocharacter mu;
};

struct DomainConfig {
  Complex period1{1.0, 0.0};  // along x (must be real positive)
  Complex period2{0.0, 1.0};  // along y (must be purely imaginary)
  double tau = 1.0;
  int nx = 16, ny = 16, nt = 16;
  std::vector<Singularity> singularities;
  double excision_radius = 0.1;
};

/// Discretized Y = (S^1 x Sigma) \ {p_j}; flat rectangular torus, periodic grid.
class LatticeDomain {
 public:
  explicit LatticeDomain(const DomainConfig& cfg);

  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double tau() const { return tau_; }
  double vol_sigma() const { return lx_ * ly_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nt() const { return nt_; }
  int sites() const { return nx_ * ny_ * nt_; }
  int slice_sites() const { return nx_ * ny_; }
  double hx() const { return lx_ / nx_; }
  double hy() const { return ly_ / ny_; }
  double ht() const { return tau_ / nt_; }
  double eps() const { return eps_; }
  const std::vector<Singularity>& singularities() const { return sing_; }

  int index(int ix, int iy, int it) const {
    return ix + nx_ * (iy + static_cast<std::ptrdiff_t>(ny_) * it);
  }
  double x_of(int ix) const { return ix * hx(); }
  double y_of(int iy) const { return iy * hy(); }
  double t_of(int it) const { return it * ht(); }
  Complex z_of(int ix, int iy) const { return {x_of(ix), y_of(iy)}; }

  /// minimum-image wrapped differences
  double wrap_t(double dt) const;
  double wrap_x(double dx) const;
  double wrap_y(double dy) const;
  Complex wrap_z(Complex dz) const;
  /// wrapped displacement (t, x, y) from singularity j to the given point
  Eigen::Vector3d rel_to_singularity(double t, Complex z, int j) const;
  double dist3(double t, Complex z, int j) const;

  bool masked(int site) const { return mask_[site] != 0; }
  std::vector<uint8_t>& mutable_mask() { return mask_; }
  const std::vector<uint8_t>& mask() const { return mask_; }
  std::size_t masked_count() const;

  /// true if |t - t_j| (wrapped) < eps for some singular time
  bool near_singular_time(double t) const;

 private:
  double lx_, ly_, tau_, eps_;
  int nx_, ny_, nt_;
  std::vector<Singularity> sing_;
  std::vector<uint8_t> mask_;
};

using DomainPtr = std::shared_ptr<const LatticeDomain>;

DomainPtr build_domain(const DomainConfig& cfg);

using MatrixField = std::vector<Matrix>;

/// Lattice connection + Higgs field in a unitary gauge: per-site skew-Hermitian
/// coefficients of (dt,dx,dy) and the Higgs field. Optional seam data:
///  - clutch_degrees: per-t-slice integer degree vector (torus coordinates);
///    the x-wrap then carries the Landau transition of the canonical
///    constant-curvature background (used by all curvature stencils).
///  - tseam: per-Sigma-site transition at the t-wrap (used by scattering).
struct GaugeData {
  GroupSpec group;
  DomainPtr domain;
  MatrixField A_t, A_x, A_y, higgs;
  Eigen::MatrixXi clutch_degrees; // nt x torus_dim, or empty
  MatrixField tseam;              // slice_sites entries, or empty

  int n() const { return group.rep_dim; }
  bool has_clutch() const { return clutch_degrees.size() > 0; }
  /// charge matrix of the clutch degree vector at slice it
  Matrix clutch_matrix(int it) const;
};

/// Curvature component F_xy (the omega_Sigma coefficient) at a site, by
/// central differences with seam-aware wrap.
Matrix curvature_xy(const GaugeData& f, int ix, int iy, int it);

/// Covariant t-derivative of the Higgs field at a site (central differences).
Matrix cov_t_higgs(const GaugeData& f, int ix, int iy, int it);

struct HebResidual {
  double r1 = 0.0; // max ||F_Sigma - grad_t Phi - K||
  double r2 = 0.0; // max ||[del-bar + a, del_t + A_t - i Phi]||
};

/// Residuals of the split HEB equations over non-excised sites whose stencils
/// stay off the mask. K is the central term (the matrix iC of the equation).
HebResidual heb_residual(const GaugeData& f, const Matrix& K);

/// f^chi(t) = (i/2pi) * integral over the slice nearest t of tr^chi(F).
/// Throws SingularSlice if t is within eps of a singular time.
double slice_degree(const GaugeData& f, const Character& chi, double t);

struct DegreeResult {
  double value = 0.0;
  double est_error = 0.0; // O(eps) coverage estimate
};

/// (1/tau) * integral of f^chi dt, skipping slices within eps of singular
/// times and renormalizing each singular interval by its covered length.
DegreeResult monopole_degree(const GaugeData& f, const Character& chi);

/// delta^chi = (i/2pi) chi_*(K) * Vol_Sigma + (1/tau) sum_j (tau - t_j) <chi, mu_j>.
double discrete_degree(const GroupSpec& g, const Matrix& K, double vol_sigma,
                       double tau, const std::vector<Singularity>& sing,
                       const Character& chi);

/// Central term K whose uniform curvature carries the given per-direction
/// degree vector: K = -(2 pi / Vol) * i * rep_diag(d).
Matrix central_from_degrees(const GroupSpec& g, const IVec& degrees, double vol_sigma);

} // namespace mono
