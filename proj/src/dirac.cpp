#include "mono/dirac.hpp"

#include <cmath>

namespace mono {

namespace {

constexpr double kAxisTol = 1e-9;

void check_patch_domain(const SphericalPoint& p, Patch patch) {
  if (p.R <= 0) throw Error("dirac_field: R must be positive");
  if (patch == Patch::Plus && p.theta < kAxisTol)
    throw OnExcludedAxis("Plus patch excludes the theta=0 axis");
  if (patch == Patch::Minus && p.theta > kPi - kAxisTol)
    throw OnExcludedAxis("Minus patch excludes the theta=pi axis");
  if (p.theta < -kAxisTol || p.theta > kPi + kAxisTol)
    throw Error("theta out of [0,pi]");
}

} // namespace

DiracPatchField dirac_field(const GroupSpec& g, const Cocharacter& mu,
                            const SphericalPoint& p, Patch patch) {
  check_patch_domain(p, patch);
  const Matrix m = charge_matrix(g, mu);
  const Complex i(0, 1);
  const double sgn = (patch == Patch::Plus) ? 1.0 : -1.0;
  DiracPatchField f;
  f.patch = patch;
  f.A_psi = (i * 0.5 * (sgn + std::cos(p.theta))) * m;
  f.higgs = (i / (2.0 * p.R)) * m;
  return f;
}

Matrix patch_transition(const GroupSpec& g, const Cocharacter& mu, double psi) {
  return cochar_eval_angle(g, mu, psi);
}

double bogomolny_residual(const GroupSpec& g, const Cocharacter& mu,
                          const std::vector<SphericalPoint>& samples) {
  const Matrix m = charge_matrix(g, mu);
  const Complex i(0, 1);
  double worst = 0.0;
  for (const auto& p : samples) {
    if (p.R <= 0) throw Error("bogomolny_residual: R must be positive");
    if (p.theta < kAxisTol || p.theta > kPi - kAxisTol)
      throw OnExcludedAxis("sample lies on a coordinate axis");

    // Orthonormal coframe {dR, R dtheta, R sin(theta) dpsi}, orientation
    // dV = R^2 sin(theta) dR ^ dtheta ^ dpsi.
    const double R = p.R, st = std::sin(p.theta);

    // Connection in both patches agrees on curvature; use Plus.
    // F = dA + A^A = -(i m/2) sin(theta) dtheta ^ dpsi  (A^A = 0, torus-valued).
    // Orthonormal (theta,psi)-coefficient:
    const Matrix F_tp = (-i * 0.5 * st / (R * R * st)) * m;

    // grad(phi) = d phi + [A, phi]; d phi = -(i m / 2R^2) dR, [A,phi] = 0.
    const Matrix dphi_R = (-i / (2.0 * R * R)) * m;
    const Matrix A_psi = (i * 0.5 * (1.0 + std::cos(p.theta))) * m;
    const Matrix phi = (i / (2.0 * R)) * m;
    const Matrix comm = A_psi * phi - phi * A_psi; // vanishes; kept honest

    // *F maps the (theta,psi) 2-form component to the R 1-form component.
    const Matrix r_comp = dphi_R - F_tp + comm / (R * st);
    double res = r_comp.norm();
    // The remaining components of grad(phi) - *F are identically zero in the
    // closed form (phi has only a dR part, F only a theta^psi part).
    worst = std::max(worst, res);
  }
  return worst;
}

double sphere_charge(const GroupSpec& g, const Character& chi,
                     const Cocharacter& mu, int n_theta, int n_psi) {
  const Matrix m = charge_matrix(g, mu);
  const Complex i(0, 1);
  // F = -(i m / 2) sin(theta) dtheta ^ dpsi over the R=1 sphere with outward
  // orientation. Composite Simpson in theta, uniform rule in psi.
  if (n_theta % 2 != 0) ++n_theta;
  const double dth = kPi / n_theta;
  const double dpsi = 2.0 * kPi / n_psi;
  double total = 0.0;
  for (int b = 0; b < n_psi; ++b) {
    double line = 0.0;
    for (int a = 0; a <= n_theta; ++a) {
      const double th = a * dth;
      const Matrix F_tp = (-i * 0.5 * std::sin(th)) * m;
      const double cf = (i / (2.0 * kPi) * char_derivative(g, chi, F_tp)).real();
      const double w = (a == 0 || a == n_theta) ? 1.0 : (a % 2 == 1 ? 4.0 : 2.0);
      line += w * cf;
    }
    total += line * dth / 3.0 * dpsi;
  }
  return total;
}

Eigen::Vector3d hopf_map(Complex z, Complex w) {
  const Complex zwbar = z * std::conj(w);
  Eigen::Vector3d out;
  out[0] = 2.0 * zwbar.real();
  out[1] = -2.0 * zwbar.imag(); // i(z w̄ − w z̄) = -2 Im(z w̄)
  out[2] = std::norm(z) - std::norm(w);
  return out;
}

CartesianField dirac_cartesian(const GroupSpec& g, const Cocharacter& mu,
                               const Eigen::Vector3d& x_rel, Patch patch) {
  const double t = x_rel[0], x = x_rel[1], y = x_rel[2];
  const double R = x_rel.norm();
  if (R <= 0) throw Error("dirac_cartesian: point at the singularity");
  const Matrix m = charge_matrix(g, mu);
  const Complex i(0, 1);

  // A = (i m/2)(±1 + cos th) dpsi with dpsi = (-y dx + x dy)/rho^2 and the
  // near-axis cancellation written explicitly:
  //   Plus:  (1+cos th)/rho^2 = 1/(R(R−t)),   singular only on t>0 axis
  //   Minus: (−1+cos th)/rho^2 = −1/(R(R+t)), singular only on t<0 axis
  double denom;
  double sgn;
  if (patch == Patch::Plus) {
    denom = R * (R - t);
    sgn = 1.0;
    if (denom < 1e-14 * R * R) throw OnExcludedAxis("Plus patch: on t>0 axis");
  } else {
    denom = R * (R + t);
    sgn = -1.0;
    if (denom < 1e-14 * R * R) throw OnExcludedAxis("Minus patch: on t<0 axis");
  }
  CartesianField f;
  f.A[0] = Matrix::Zero(g.rep_dim, g.rep_dim);
  f.A[1] = (i * 0.5 * sgn) * (-y / denom) * m;
  f.A[2] = (i * 0.5 * sgn) * (x / denom) * m;
  f.higgs = (i / (2.0 * R)) * m;
  return f;
}

CartesianField wu_yang_su2(const Eigen::Vector3d& x_rel) {
  // Coordinates (t,x,y) map to Pauli directions (s3,s1,s2) (even permutation,
  // orientation preserved). Generators T_a = i sigma_a / 2.
  // phi = -(1/R) uhat·T,  A_i = -eps_{aib} u_b T_a / R^2  in u = (x,y,t);
  // uhat·T is covariantly constant and the pair solves F = *d phi.
  const double R = x_rel.norm();
  if (R <= 0) throw Error("wu_yang_su2: point at the singularity");
  const double u1 = x_rel[1], u2 = x_rel[2], u3 = x_rel[0];
  const Complex i(0, 1);

  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  const Matrix T[3] = {i * 0.5 * s1, i * 0.5 * s2, i * 0.5 * s3};
  const double u[3] = {u1, u2, u3};

  auto eps = [](int a, int b, int c) -> double {
    return ((a - b) * (b - c) * (c - a)) / 2.0;
  };

  CartesianField f;
  Matrix A_u[3];
  for (int idx = 0; idx < 3; ++idx) {
    Matrix acc = Matrix::Zero(2, 2);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        acc += (-eps(a, idx, b) * u[b] / (R * R)) * T[a];
    A_u[idx] = acc;
  }
  // reorder components u=(x,y,t) back to (t,x,y)
  f.A[0] = A_u[2];
  f.A[1] = A_u[0];
  f.A[2] = A_u[1];
  Matrix uhatT = Matrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) uhatT += (u[a] / R) * T[a];
  f.higgs = -(1.0 / R) * uhatT;
  return f;
}

} // namespace mono
