#include "doctest.h"

#include <random>

#include "mono/dirac.hpp"

using namespace mono;

namespace {

Cocharacter cochar(std::initializer_list<int> w) {
  Cocharacter mu;
  mu.weights.resize(static_cast<int>(w.size()));
  int i = 0;
  for (int v : w) mu.weights[i++] = v;
  return mu;
}

// Finite-difference Bogomolny check at a Cartesian point for any field map.
// Orientation (t,x,y): F_{12} = D_0 phi, F_{20} = D_1 phi, F_{01} = D_2 phi.
template <typename FieldFn>
double fd_bogomolny(FieldFn field, const Eigen::Vector3d& p, double h) {
  auto at = [&](int k, double step) {
    Eigen::Vector3d q = p;
    q[k] += step;
    return field(q);
  };
  CartesianField c = field(p);
  Matrix dA[3][3], dPhi[3];
  for (int k = 0; k < 3; ++k) {
    CartesianField fp = at(k, h), fm = at(k, -h);
    for (int j = 0; j < 3; ++j) dA[k][j] = (fp.A[j] - fm.A[j]) / (2 * h);
    dPhi[k] = (fp.higgs - fm.higgs) / (2 * h);
  }
  auto F = [&](int i, int j) {
    return dA[i][j] - dA[j][i] + c.A[i] * c.A[j] - c.A[j] * c.A[i];
  };
  auto D = [&](int i) { return dPhi[i] + c.A[i] * c.higgs - c.higgs * c.A[i]; };
  double r = 0;
  r = std::max(r, (F(1, 2) - D(0)).norm());
  r = std::max(r, (F(2, 0) - D(1)).norm());
  r = std::max(r, (F(0, 1) - D(2)).norm());
  return r;
}

} // namespace

TEST_CASE("dirac_field closed form") {
  auto su2 = build_group(GroupFamily::SUn, 2);

  auto z = dirac_field(su2, cochar({0, 0}), {1.0, 1.0, 0.0}, Patch::Plus);
  CHECK(z.A_psi.norm() == 0.0);
  CHECK(z.higgs.norm() == 0.0);

  auto at_pi = dirac_field(su2, cochar({1, -1}), {1.0, kPi, 0.0}, Patch::Plus);
  CHECK(at_pi.A_psi.norm() < 1e-15);

  auto f = dirac_field(su2, cochar({1, -1}), {1.0, kPi / 2, 0.3}, Patch::Plus);
  Matrix expect(2, 2);
  expect << Complex(0, 0.5), 0, 0, Complex(0, -0.5);
  CHECK((f.A_psi - expect).norm() < 1e-15);
  CHECK(f.higgs.norm() == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));

  CHECK_THROWS_AS(dirac_field(su2, cochar({1, -1}), {1.0, 0.0, 0.0}, Patch::Plus),
                  OnExcludedAxis);
  CHECK_THROWS_AS(dirac_field(su2, cochar({1, -1}), {1.0, kPi, 0.0}, Patch::Minus),
                  OnExcludedAxis);
}

TEST_CASE("patch_transition") {
  auto u1 = build_group(GroupFamily::Un, 1);
  CHECK((patch_transition(u1, cochar({0}), 1.7) -
         Matrix::Identity(1, 1)).norm() < 1e-15);
  CHECK(std::abs(patch_transition(u1, cochar({1}), kPi)(0, 0) - Complex(-1, 0)) <
        1e-12);

  // periodicity
  auto su2 = build_group(GroupFamily::SUn, 2);
  CHECK((patch_transition(su2, cochar({2, -2}), 0.4) -
         patch_transition(su2, cochar({2, -2}), 0.4 + 2 * kPi)).norm() < 1e-12);
}

TEST_CASE("gauge consistency of the two patches under the transition") {
  // A_- = g A_+ g^{-1} - (dg) g^{-1}, with dg by central finite differences.
  auto su2 = build_group(GroupFamily::SUn, 2);
  auto mu = cochar({2, -2});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.3, kPi - 0.3), ps(0.0, 2 * kPi);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    SphericalPoint p{1.0, th(rng), ps(rng)};
    auto fp = dirac_field(su2, mu, p, Patch::Plus);
    auto fm = dirac_field(su2, mu, p, Patch::Minus);
    Matrix g = patch_transition(su2, mu, p.psi);
    Matrix dg = (patch_transition(su2, mu, p.psi + h) -
                 patch_transition(su2, mu, p.psi - h)) /
                (2 * h);
    Matrix rhs = g * fp.A_psi * g.inverse() - dg * g.inverse();
    CHECK((fm.A_psi - rhs).norm() < 1e-8);
  }
}

TEST_CASE("bogomolny_residual is roundoff for exact fields") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  auto u1 = build_group(GroupFamily::Un, 1);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ps(0.0, 2 * kPi),
      rr(0.05, 20.0);
  std::vector<SphericalPoint> pts;
  for (int k = 0; k < 1000; ++k) pts.push_back({rr(rng), th(rng), ps(rng)});

  CHECK(bogomolny_residual(su2, cochar({0, 0}), pts) == 0.0);
  CHECK(bogomolny_residual(su2, cochar({1, -1}), pts) < 1e-10);

  std::vector<SphericalPoint> radii = {{0.1, 1.0, 0.2}, {1.0, 1.0, 0.2},
                                       {10.0, 1.0, 0.2}};
  CHECK(bogomolny_residual(u1, cochar({3}), radii) < 1e-10);

  CHECK_THROWS_AS(bogomolny_residual(u1, cochar({1}), {{1.0, 0.0, 0.0}}),
                  OnExcludedAxis);
}

TEST_CASE("bogomolny exactness across charges up to norm 10") {
  auto su3 = build_group(GroupFamily::SUn, 3);
  std::vector<SphericalPoint> pts;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ps(0.0, 2 * kPi),
      rr(0.1, 5.0);
  for (int k = 0; k < 50; ++k) pts.push_back({rr(rng), th(rng), ps(rng)});
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      Cocharacter mu = cochar({a, b, -a - b});
      CHECK(bogomolny_residual(su3, mu, pts) < 1e-10);
    }
}

TEST_CASE("sphere charge quadrature equals the lattice pairing") {
  struct Case {
    GroupFamily fam;
    int n;
    std::vector<int> chi, mu;
  };
  std::vector<Case> cases = {
      {GroupFamily::Un, 1, {1}, {1}},
      {GroupFamily::Un, 1, {2}, {3}},
      {GroupFamily::Un, 2, {1, 1}, {1, 0}},
      {GroupFamily::Un, 2, {1, -1}, {2, -1}},
      {GroupFamily::SUn, 2, {1, -1}, {1, -1}},
      {GroupFamily::SUn, 3, {2, -1, -1}, {1, 0, -1}},
      {GroupFamily::SUn, 3, {1, 1, -2}, {2, -1, -1}},
      {GroupFamily::Sp2, 2, {4, 0}, {1, 2}},
      {GroupFamily::Sp2, 2, {3, 3}, {2, -1}},
      {GroupFamily::TorusProduct, 3, {1, 0, 2}, {0, 1, -1}},
  };
  for (const auto& c : cases) {
    auto g = build_group(c.fam, c.n);
    Character chi;
    chi.weights = Eigen::Map<const IVec>(c.chi.data(), c.chi.size());
    Cocharacter mu;
    mu.weights = Eigen::Map<const IVec>(c.mu.data(), c.mu.size());
    double q = sphere_charge(g, chi, mu, 100, 100);
    CHECK(std::abs(q - pair_char_cochar(chi, mu)) < 1e-6);
  }
}

TEST_CASE("hopf map") {
  CHECK((hopf_map(1, 0) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  CHECK((hopf_map(0, 1) - Eigen::Vector3d(0, 0, -1)).norm() < 1e-15);
  double s = 1.0 / std::sqrt(2.0);
  CHECK((hopf_map(s, s) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);

  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 50; ++k) {
    Complex z(nd(rng), nd(rng)), w(nd(rng), nd(rng));
    auto v = hopf_map(z, w);
    CHECK(v.norm() == doctest::Approx(std::norm(z) + std::norm(w)).epsilon(1e-12));
    double alpha = nd(rng);
    Complex ph = std::exp(Complex(0, alpha));
    CHECK((hopf_map(ph * z, ph * w) - v).norm() < 1e-12);
  }
}

TEST_CASE("cartesian patch fields match the spherical form") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  auto mu = cochar({3, -3});
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 50; ++k) {
    Eigen::Vector3d p(nd(rng), nd(rng), nd(rng));
    double rho = std::hypot(p[1], p[2]);
    if (rho < 0.1 || p.norm() < 0.1) continue;
    auto cart = dirac_cartesian(su2, mu, p, Patch::Plus);
    // A_psi = -y A_x + x A_y (pullback along d/dpsi)
    Matrix A_psi = -p[2] * cart.A[1] + p[1] * cart.A[2];
    double R = p.norm();
    double theta = std::acos(p[0] / R);
    double psi = std::atan2(p[2], p[1]);
    auto sph = dirac_field(su2, mu, {R, theta, psi}, Patch::Plus);
    CHECK((A_psi - sph.A_psi).norm() < 1e-12);
    CHECK((cart.higgs - sph.higgs).norm() < 1e-14);
  }
}

TEST_CASE("cartesian patch fields solve the Bogomolny equation (FD oracle)") {
  auto u1 = build_group(GroupFamily::Un, 1);
  auto mu = cochar({2});
  auto field = [&](const Eigen::Vector3d& q) {
    return dirac_cartesian(u1, mu, q, Patch::Plus);
  };
  std::mt19937_64 rng(43);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    Eigen::Vector3d p(nd(rng), nd(rng), nd(rng));
    if (std::hypot(p[1], p[2]) < 0.3 || p.norm() < 0.5 || p.norm() > 2.0) continue;
    CHECK(fd_bogomolny(field, p, 1e-4) < 1e-5);
  }
}

TEST_CASE("wu_yang_su2 is a smooth Bogomolny solution with Dirac asymptotics") {
  auto field = [&](const Eigen::Vector3d& q) { return wu_yang_su2(q); };
  std::mt19937_64 rng(47);
  std::normal_distribution<double> nd;
  int checked = 0;
  for (int k = 0; k < 40; ++k) {
    Eigen::Vector3d p(nd(rng), nd(rng), nd(rng));
    if (p.norm() < 0.4 || p.norm() > 2.5) continue;
    ++checked;
    CHECK(fd_bogomolny(field, p, 1e-4) < 1e-6);
    // |phi| eigenvalues are +-1/(2R)
    auto f = wu_yang_su2(p);
    Eigen::ComplexEigenSolver<Matrix> es(f.higgs);
    double R = p.norm();
    std::vector<double> im = {es.eigenvalues()[0].imag(), es.eigenvalues()[1].imag()};
    std::sort(im.begin(), im.end());
    CHECK(im[0] == doctest::Approx(-0.5 / R).epsilon(1e-9));
    CHECK(im[1] == doctest::Approx(0.5 / R).epsilon(1e-9));
  }
  CHECK(checked > 10);

  // smooth (finite) arbitrarily close to both axes
  for (double t : {0.7, -0.7}) {
    auto f = wu_yang_su2({t, 1e-8, 0.0});
    for (auto& A : f.A) CHECK(A.norm() < 10.0);
  }
}
