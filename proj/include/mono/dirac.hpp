#pragma once

#include <array>

#include "mono/lie.hpp"

namespace mono {

enum class Patch { Plus, Minus };

struct SphericalPoint {
  double R = 1.0;     // geodesic radius, > 0
  double theta = 0.0; // [0, pi]
  double psi = 0.0;   // [0, 2*pi)
};

struct DiracPatchField {
  Patch patch = Patch::Plus;
  Matrix A_psi;  // coefficient of d(psi)
  Matrix higgs;
};

/// Closed-form patch field of the μ-Dirac monopole:
/// A_± = (i m / 2)(±1 + cos θ) dψ, φ = i m / (2R).
DiracPatchField dirac_field(const GroupSpec& g, const Cocharacter& mu,
                            const SphericalPoint& p, Patch patch);

/// Transition g_± = μ(ψ) between the two patches.
Matrix patch_transition(const GroupSpec& g, const Cocharacter& mu, double psi);

/// max over samples of ‖∇φ − *F‖ from the closed-form derivatives
/// (orthonormal spherical coframe; exact identity, result is roundoff).
double bogomolny_residual(const GroupSpec& g, const Cocharacter& mu,
                          const std::vector<SphericalPoint>& samples);

/// (i/2π) ∮_{R=1} tr^χ(F) by quadrature with n_u × n_psi points
/// (outward orientation).
double sphere_charge(const GroupSpec& g, const Character& chi,
                     const Cocharacter& mu, int n_u, int n_psi);

/// (z, w) ↦ (z w̄ + w z̄, i(z w̄ − w z̄), |z|² − |w|²).
Eigen::Vector3d hopf_map(Complex z, Complex w);

/// Dirac patch field in Cartesian coordinates (t, x, y) relative to the
/// singular point, with the dψ singularity written in regularized form
/// (smooth away from the patch's excluded axis).
struct CartesianField {
  std::array<Matrix, 3> A; // components along (t, x, y)
  Matrix higgs;
};

CartesianField dirac_cartesian(const GroupSpec& g, const Cocharacter& mu,
                               const Eigen::Vector3d& x_rel, Patch patch);

/// Smooth SU(2) hedgehog form of the charge-(1,−1) Dirac monopole
/// (gauge-equivalent to the abelian patches, no string away from the origin).
CartesianField wu_yang_su2(const Eigen::Vector3d& x_rel);

} // namespace mono
