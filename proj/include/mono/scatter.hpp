#pragma once

#include "mono/lattice.hpp"

namespace mono {

/// Holomorphic slice data at t=0 plus the circle monodromy field.
struct MeromorphicPair {
  GroupSpec group;
  DomainPtr domain;
  MatrixField slice_a;             // (0,1)-coefficient on the t=0 slice
  MatrixField rho;                 // per-Sigma-site monodromy (masked: unset)
  std::vector<uint8_t> column_mask;
  std::vector<Singularity> markers;
  IVec slice_clutch;               // degree clutch of the t=0 slice (may be empty)
  int degree_k0 = 0;

  int n() const { return group.rep_dim; }
  bool column_masked(int ix, int iy) const {
    return column_mask[ix + domain->nx() * iy] != 0;
  }
};

struct Factorization {
  Cocharacter mu_hat;   // dominant-chamber representative
  IVec orders;          // per-singular-value growth orders (sorted descending)
  double condition = 0; // max deviation of the fitted slopes from integers
};

/// Complex parallel transport along [t0,t1] x {z}: solves dγ/dt = (iΦ - A_t)γ
/// (RK4, fixed steps refined 4x against the field grid, bilinear interpolation
/// in z, linear in t). Throws SegmentHitsSingularity if the segment meets an
/// excision ball.
Matrix scatter_segment(const GaugeData& f, Complex z, double t0, double t1,
                       int refine = 4);

/// Monodromy of the scattering operator around the circle, composed with the
/// stored t-wrap transition; plus the t=0 holomorphic slice data.
MeromorphicPair monodromy_pair(const GaugeData& f);

/// Recover the cocharacter at singularity j from singular-value growth
/// exponents of rho over circles of the given radii.
Factorization local_factorize(const MeromorphicPair& pair, int j,
                              const std::vector<double>& radii);

/// Bilinear interpolation of the monodromy field at an arbitrary z.
Matrix interp_rho(const MeromorphicPair& pair, Complex z);

/// Dominant-chamber representative of an integer exponent tuple (sorted
/// descending; Sp2 reduces to the first two coordinates).
IVec dominant_orders(const GroupSpec& g, IVec orders);

} // namespace mono
