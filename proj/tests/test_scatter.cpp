#include "doctest.h"

#include <random>

#include "mono/fields.hpp"
#include "mono/scatter.hpp"

using namespace mono;

namespace {

Cocharacter cochar(std::initializer_list<int> w) {
  Cocharacter mu;
  mu.weights.resize(static_cast<int>(w.size()));
  int i = 0;
  for (int v : w) mu.weights[i++] = v;
  return mu;
}

DomainConfig base_cfg(int n) {
  DomainConfig cfg;
  cfg.nx = cfg.ny = cfg.nt = n;
  return cfg;
}

// synthetic pair whose monodromy field is rho(z) = G mu(z - z1) H
MeromorphicPair synthetic_pair(const GroupSpec& g, const Cocharacter& mu,
                               const Matrix& G, const Matrix& H, int n) {
  DomainConfig cfg = base_cfg(n);
  cfg.singularities = {{0.5, Complex(0.5, 0.5), mu}};
  cfg.excision_radius = 0.08;
  auto dom = build_domain(cfg);
  MeromorphicPair pair;
  pair.group = g;
  pair.domain = dom;
  pair.markers = cfg.singularities;
  pair.column_mask.assign(dom->slice_sites(), 0);
  pair.rho.assign(dom->slice_sites(), Matrix());
  pair.slice_a.assign(dom->slice_sites(),
                      Matrix::Zero(g.rep_dim, g.rep_dim));
  for (int iy = 0; iy < dom->ny(); ++iy)
    for (int ix = 0; ix < dom->nx(); ++ix) {
      const int col = ix + dom->nx() * iy;
      Complex dz = dom->wrap_z(dom->z_of(ix, iy) - Complex(0.5, 0.5));
      if (std::abs(dz) < 0.5 * cfg.excision_radius) {
        pair.column_mask[col] = 1;
        continue;
      }
      pair.rho[col] = G * cochar_eval(g, mu, dz) * H;
    }
  return pair;
}

} // namespace

TEST_CASE("scatter_segment basics") {
  auto g = build_group(GroupFamily::SUn, 2);
  auto dom = build_domain(base_cfg(16));

  auto flat = flat_field(g, dom);
  Matrix one = scatter_segment(flat, Complex(0.3, 0.4), 0.0, dom->tau());
  CHECK((one - Matrix::Identity(2, 2)).norm() < 1e-12);

  double a = 0.7;
  Matrix phi(2, 2);
  phi << Complex(0, a), 0, 0, Complex(0, -a);
  auto f = constant_higgs_field(g, dom, phi);
  Matrix rho = scatter_segment(f, Complex(0.3, 0.4), 0.0, dom->tau());
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = std::exp(-a * dom->tau());
  expect(1, 1) = std::exp(a * dom->tau());
  CHECK((rho - expect).norm() < 1e-8);

  // composition law is tight for aligned fixed steps
  Matrix half1 = scatter_segment(f, Complex(0.3, 0.4), 0.0, 0.5);
  Matrix half2 = scatter_segment(f, Complex(0.3, 0.4), 0.5, 1.0);
  CHECK((half2 * half1 - rho).norm() < 1e-8);
}

TEST_CASE("scatter_segment refuses to cross excision balls") {
  auto g = build_group(GroupFamily::Un, 1);
  DomainConfig cfg = base_cfg(16);
  cfg.singularities = {{0.5, Complex(0.5, 0.5), cochar({1})}};
  cfg.excision_radius = 0.1;
  auto dom = build_domain(cfg);
  auto f = flat_field(g, dom);
  CHECK_THROWS_AS(scatter_segment(f, Complex(0.5 + 0.01, 0.5), 0.0, 1.0),
                  SegmentHitsSingularity);
  CHECK_NOTHROW(scatter_segment(f, Complex(0.8, 0.5), 0.0, 1.0));
}

TEST_CASE("monodromy_pair on flat and constant-Higgs fields") {
  auto g = build_group(GroupFamily::SUn, 2);
  auto dom = build_domain(base_cfg(12));
  auto flat = flat_field(g, dom);
  auto pair = monodromy_pair(flat);
  CHECK(pair.degree_k0 == 0);
  for (int col = 0; col < dom->slice_sites(); ++col)
    CHECK((pair.rho[col] - Matrix::Identity(2, 2)).norm() < 1e-12);

  double a = 0.4;
  Matrix phi(2, 2);
  phi << Complex(0, a), 0, 0, Complex(0, -a);
  auto f = constant_higgs_field(g, dom, phi);
  auto pair2 = monodromy_pair(f);
  Eigen::ComplexEigenSolver<Matrix> es(pair2.rho[5]);
  std::vector<double> mags = {std::abs(es.eigenvalues()[0]),
                              std::abs(es.eigenvalues()[1])};
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] == doctest::Approx(std::exp(-a)).epsilon(1e-6));
  CHECK(mags[1] == doctest::Approx(std::exp(a)).epsilon(1e-6));
}

TEST_CASE("local_factorize recovers the cocharacter") {
  auto g = build_group(GroupFamily::SUn, 2);
  std::vector<double> radii = {0.08, 0.12, 0.18, 0.26};

  // exact power law
  auto pair = synthetic_pair(g, cochar({2, -2}), Matrix::Identity(2, 2),
                             Matrix::Identity(2, 2), 64);
  auto fac = local_factorize(pair, 0, radii);
  CHECK(fac.mu_hat.weights == IVec(cochar({2, -2}).weights));
  CHECK(fac.condition < 0.05);

  // conjugated by fixed invertible frames
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  Matrix G(2, 2), H(2, 2);
  do {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        G(i, j) = Complex(nd(rng), nd(rng));
        H(i, j) = Complex(nd(rng), nd(rng));
      }
  } while (std::abs(G.determinant()) < 0.3 || std::abs(H.determinant()) < 0.3);
  auto pair2 = synthetic_pair(g, cochar({2, -2}), G, H, 64);
  auto fac2 = local_factorize(pair2, 0, radii);
  CHECK(fac2.mu_hat.weights == IVec(cochar({2, -2}).weights));

  // holomorphic invertible: all orders zero
  auto pair3 = synthetic_pair(g, cochar({0, 0}), G, H, 64);
  auto fac3 = local_factorize(pair3, 0, radii);
  CHECK(fac3.mu_hat.weights == IVec(cochar({0, 0}).weights));

  CHECK_THROWS_AS(local_factorize(pair, 0, {0.08, 0.12}), Error);
}

TEST_CASE("det winding of the monodromy matches the pairing") {
  auto g = build_group(GroupFamily::Un, 2);
  auto pair = synthetic_pair(g, cochar({1, 0}), Matrix::Identity(2, 2),
                             Matrix::Identity(2, 2), 64);
  // winding of det(rho) along a circle about z_1
  const double r = 0.2;
  const int n = 256;
  double winding = 0;
  double prev = 0;
  for (int k = 0; k <= n; ++k) {
    double ang = 2.0 * kPi * k / n;
    Complex z = Complex(0.5, 0.5) + r * Complex(std::cos(ang), std::sin(ang));
    Complex det = interp_rho(pair, z).determinant();
    double arg = std::arg(det);
    if (k > 0) {
      double d = arg - prev;
      while (d > kPi) d -= 2 * kPi;
      while (d < -kPi) d += 2 * kPi;
      winding += d;
    }
    prev = arg;
  }
  long w = std::lround(winding / (2 * kPi));
  CHECK(w == pair_char_cochar(det_character(g), cochar({1, 0})));
}

TEST_CASE("dominant_orders") {
  auto su3 = build_group(GroupFamily::SUn, 3);
  IVec v(3);
  v << -1, 2, -1;
  CHECK(dominant_orders(su3, v) == IVec(cochar({2, -1, -1}).weights));

  auto sp2 = build_group(GroupFamily::Sp2, 2);
  IVec w(4);
  w << -1, 2, 1, -2;
  CHECK(dominant_orders(sp2, w) == IVec(cochar({2, 1}).weights));
}
