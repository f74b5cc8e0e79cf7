#include "doctest.h"

#include <random>

#include "mono/lie.hpp"

using namespace mono;

namespace {

Cocharacter cochar(std::initializer_list<int> w) {
  Cocharacter mu;
  mu.weights.resize(static_cast<int>(w.size()));
  int i = 0;
  for (int v : w) mu.weights[i++] = v;
  return mu;
}

Character charac(std::initializer_list<int> w, const std::string& name = "") {
  Character chi;
  chi.weights.resize(static_cast<int>(w.size()));
  int i = 0;
  for (int v : w) chi.weights[i++] = v;
  chi.name = name;
  return chi;
}

} // namespace

TEST_CASE("build_group basic data") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  CHECK(su2.rank == 1);
  CHECK(su2.rep_dim == 2);
  CHECK(su2.simple_roots.size() == 1);
  CHECK(weyl_group_elements(su2).size() == 2);

  auto t3 = build_group(GroupFamily::TorusProduct, 3);
  CHECK(t3.rank == 3);
  CHECK(t3.simple_roots.empty());
  CHECK(weyl_group_elements(t3).size() == 1);

  auto sp2 = build_group(GroupFamily::Sp2, 2);
  CHECK(sp2.rank == 2);
  CHECK(sp2.rep_dim == 4);
  CHECK(weyl_group_elements(sp2).size() == 8);

  CHECK_THROWS_AS(build_group(GroupFamily::Un, 9), UnsupportedGroup);
}

TEST_CASE("Sp2 Weyl group is all signed permutations of two coordinates") {
  // Oracle: enumerate the 8 signed permutations directly.
  auto sp2 = build_group(GroupFamily::Sp2, 2);
  auto elems = weyl_group_elements(sp2);
  std::vector<SignedPerm> all;
  for (int p = 0; p < 2; ++p)
    for (int s0 : {1, -1})
      for (int s1 : {1, -1}) {
        SignedPerm g;
        g.perm = p == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
        g.sign = {s0, s1};
        all.push_back(g);
      }
  REQUIRE(elems.size() == all.size());
  for (const auto& g : all)
    CHECK(std::find(elems.begin(), elems.end(), g) != elems.end());
}

TEST_CASE("cochar_derivative") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  auto u1 = build_group(GroupFamily::Un, 1);

  CHECK(cochar_derivative(su2, cochar({0, 0})).norm() == 0.0);

  Matrix d = cochar_derivative(su2, cochar({1, -1}));
  CHECK(std::abs(d(0, 0) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(d(1, 1) - Complex(0, -1)) < 1e-15);

  Matrix d1 = cochar_derivative(u1, cochar({2}));
  CHECK(std::abs(d1(0, 0) - Complex(0, 2)) < 1e-15);
}

TEST_CASE("cocharacter periodicity: exp(2 pi mu_*) = 1") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> k(-5, 5);
  for (auto fam : {GroupFamily::Un, GroupFamily::SUn, GroupFamily::Sp2}) {
    auto g = build_group(fam, fam == GroupFamily::Sp2 ? 2 : 3);
    for (int trial = 0; trial < 20; ++trial) {
      Cocharacter mu;
      mu.weights.resize(g.torus_dim);
      for (int a = 0; a < g.torus_dim; ++a) mu.weights[a] = k(rng);
      if (fam == GroupFamily::SUn)
        mu.weights[g.torus_dim - 1] -= mu.weights.sum();
      // exp(2 pi i m) with integer m is the identity; reuse the angle map.
      Matrix e = cochar_eval_angle(g, mu, 2.0 * kPi);
      CHECK((e - Matrix::Identity(g.rep_dim, g.rep_dim)).norm() < 1e-12);
    }
  }
}

TEST_CASE("char_derivative") {
  auto u3 = build_group(GroupFamily::Un, 3);
  auto det3 = det_character(u3);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Matrix X(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) X(i, j) = Complex(nd(rng), nd(rng));
  CHECK(std::abs(char_derivative(u3, det3, X) - X.trace()) < 1e-12);

  auto su2 = build_group(GroupFamily::SUn, 2);
  Matrix Y = cochar_derivative(su2, cochar({1, -1}));
  CHECK(std::abs(char_derivative(su2, det_character(su2), Y)) < 1e-15);

  // |Ad_L^u| of the SL2 Borel on diag(1,-1): adjoint weight of the upper-right
  // root space is t^2, so the derivative evaluates to 2.
  auto pars = maximal_parabolics(su2);
  REQUIRE(pars.size() == 1);
  Matrix H = Matrix::Zero(2, 2);
  H(0, 0) = 1;
  H(1, 1) = -1;
  CHECK(std::abs(char_derivative(su2, pars[0].stability_char, H) - 2.0) < 1e-14);
}

TEST_CASE("pair_char_cochar") {
  auto u2 = build_group(GroupFamily::Un, 2);
  CHECK(pair_char_cochar(det_character(u2), cochar({1, 0})) == 1);

  auto su2 = build_group(GroupFamily::SUn, 2);
  CHECK(pair_char_cochar(det_character(su2), cochar({1, -1})) == 0);

  auto pars = maximal_parabolics(su2);
  CHECK(pair_char_cochar(pars[0].stability_char, cochar({1, -1})) == 2);
}

TEST_CASE("pair_char_cochar bilinearity and derivative consistency") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> k(-4, 4);
  auto u3 = build_group(GroupFamily::Un, 3);
  for (int trial = 0; trial < 30; ++trial) {
    IVec a(3), b(3), c(3);
    for (int i = 0; i < 3; ++i) { a[i] = k(rng); b[i] = k(rng); c[i] = k(rng); }
    Character chi{a, ""};
    Cocharacter m1{b}, m2{c};
    Cocharacter sum{IVec(b + c)};
    CHECK(pair_char_cochar(chi, sum) ==
          pair_char_cochar(chi, m1) + pair_char_cochar(chi, m2));
    // pairing equals tr^chi applied to the charge matrix
    Complex viaD = char_derivative(u3, chi, charge_matrix(u3, m1));
    CHECK(std::abs(viaD - Complex(pair_char_cochar(chi, m1))) < 1e-12);
  }
}

TEST_CASE("maximal_parabolics") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  auto p2 = maximal_parabolics(su2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].levi_blocks == std::vector<int>{1, 1});

  auto su3 = build_group(GroupFamily::SUn, 3);
  auto p3 = maximal_parabolics(su3);
  REQUIRE(p3.size() == 2);
  // stability character = sum of unipotent roots, recomputed independently
  for (const auto& par : p3) {
    IVec sum = IVec::Zero(3);
    for (const auto& r : par.unipotent_roots) sum += r;
    CHECK(par.stability_char.weights == sum);
  }
  CHECK(p3[0].stability_char.weights == IVec(cochar({2, -1, -1}).weights));
  CHECK(p3[1].stability_char.weights == IVec(cochar({1, 1, -2}).weights));

  auto t2 = build_group(GroupFamily::TorusProduct, 2);
  CHECK_THROWS_AS(maximal_parabolics(t2), NoParabolics);

  // Sp2: omit short root -> u has roots {e1-e2, e1+e2, 2e1}; omit long ->
  // {2e2, e1+e2, 2e1}.
  auto sp2 = build_group(GroupFamily::Sp2, 2);
  auto ps = maximal_parabolics(sp2);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].stability_char.weights == IVec(cochar({4, 0}).weights));
  CHECK(ps[1].stability_char.weights == IVec(cochar({3, 3}).weights));
}

TEST_CASE("stability character vanishes on the center") {
  auto u2 = build_group(GroupFamily::Un, 2);
  auto pars = maximal_parabolics(u2);
  Matrix center = Complex(0, 1) * Matrix::Identity(2, 2);
  for (const auto& par : pars)
    CHECK(std::abs(char_derivative(u2, par.stability_char, center)) < 1e-14);
}

TEST_CASE("weyl_orbit") {
  auto su2 = build_group(GroupFamily::SUn, 2);
  Complex a(0.7, 0.2);
  auto orb = weyl_orbit(su2, {a, 1.0 / a});
  CHECK(orb.size() == 2);

  auto su3 = build_group(GroupFamily::SUn, 3);
  CHECK(weyl_orbit(su3, {1.0, 1.0, 1.0}).size() == 1);

  Complex x(1.3, 0.4), y(0.2, -0.9);
  auto orb6 = weyl_orbit(su3, {x, y, 1.0 / (x * y)});
  CHECK(orb6.size() == 6);

  auto sp2 = build_group(GroupFamily::Sp2, 2);
  auto orb8 = weyl_orbit(sp2, {x, y});
  CHECK(orb8.size() == 8);
}

TEST_CASE("weyl_orbit idempotence and Lagrange divisibility") {
  auto su3 = build_group(GroupFamily::SUn, 3);
  std::size_t W = weyl_group_elements(su3).size();
  Complex x(1.1, 0.0);
  // partially degenerate tuple: (x, x, x^-2)
  auto orb = weyl_orbit(su3, {x, x, 1.0 / (x * x)});
  CHECK(W % orb.size() == 0);
  CHECK(orb.size() == 3);
  for (const auto& t : orb) {
    auto orb2 = weyl_orbit(su3, t);
    CHECK(orb2.size() == orb.size());
  }
}
