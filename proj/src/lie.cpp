#include "mono/lie.hpp"

#include <algorithm>
#include <cmath>

namespace mono {

std::string family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::Un: return "Un";
    case GroupFamily::SUn: return "SUn";
    case GroupFamily::Sp2: return "Sp2";
    case GroupFamily::TorusProduct: return "TorusProduct";
  }
  return "?";
}

bool SignedPerm::is_involution() const {
  const int d = dim();
  for (int a = 0; a < d; ++a) {
    // square: perm[perm[a]] == a with signs multiplying to +1
    if (perm[perm[a]] != a) return false;
    if (sign[a] * sign[perm[a]] != 1) return false;
  }
  return true;
}

std::vector<Complex> SignedPerm::apply(const std::vector<Complex>& t) const {
  std::vector<Complex> out(t.size());
  for (int a = 0; a < dim(); ++a) {
    Complex v = t[perm[a]];
    out[a] = sign[a] > 0 ? v : Complex(1.0) / v;
  }
  return out;
}

IVec SignedPerm::apply_weights(const IVec& k) const {
  IVec out(k.size());
  for (int a = 0; a < dim(); ++a) out[a] = sign[a] * k[perm[a]];
  return out;
}

namespace {

SignedPerm identity_perm(int d) {
  SignedPerm e;
  e.perm.resize(d);
  e.sign.assign(d, 1);
  for (int a = 0; a < d; ++a) e.perm[a] = a;
  return e;
}

SignedPerm compose(const SignedPerm& g1, const SignedPerm& g2) {
  const int d = g1.dim();
  SignedPerm c;
  c.perm.resize(d);
  c.sign.resize(d);
  for (int a = 0; a < d; ++a) {
    c.perm[a] = g2.perm[g1.perm[a]];
    c.sign[a] = g1.sign[a] * g2.sign[g1.perm[a]];
  }
  return c;
}

SignedPerm transposition(int d, int i, int j) {
  SignedPerm s = identity_perm(d);
  std::swap(s.perm[i], s.perm[j]);
  return s;
}

SignedPerm sign_flip(int d, int i) {
  SignedPerm s = identity_perm(d);
  s.sign[i] = -1;
  return s;
}

} // namespace

GroupSpec build_group(GroupFamily family, int n) {
  GroupSpec g;
  g.family = family;
  g.n = n;
  switch (family) {
    case GroupFamily::Un: {
      if (n < 1 || n > 4) throw UnsupportedGroup("Un: n must be in [1,4]");
      g.rep_dim = n;
      g.rank = n;
      g.torus_dim = n;
      g.rep_weights = Eigen::MatrixXi::Identity(n, n);
      for (int i = 0; i + 1 < n; ++i) {
        IVec r = IVec::Zero(n);
        r[i] = 1;
        r[i + 1] = -1;
        g.simple_roots.push_back(r);
        g.weyl_generators.push_back(transposition(n, i, i + 1));
      }
      break;
    }
    case GroupFamily::SUn: {
      if (n < 2 || n > 4) throw UnsupportedGroup("SUn: n must be in [2,4]");
      g.rep_dim = n;
      g.rank = n - 1;
      g.torus_dim = n;
      g.rep_weights = Eigen::MatrixXi::Identity(n, n);
      for (int i = 0; i + 1 < n; ++i) {
        IVec r = IVec::Zero(n);
        r[i] = 1;
        r[i + 1] = -1;
        g.simple_roots.push_back(r);
        g.weyl_generators.push_back(transposition(n, i, i + 1));
      }
      break;
    }
    case GroupFamily::Sp2: {
      g.n = 2;
      g.rep_dim = 4;
      g.rank = 2;
      g.torus_dim = 2;
      // torus diag(x, y, x^{-1}, y^{-1})
      g.rep_weights.resize(4, 2);
      g.rep_weights << 1, 0, 0, 1, -1, 0, 0, -1;
      IVec a1(2), a2(2);
      a1 << 1, -1;  // short root
      a2 << 0, 2;   // long root
      g.simple_roots = {a1, a2};
      g.weyl_generators = {transposition(2, 0, 1), sign_flip(2, 1)};
      break;
    }
    case GroupFamily::TorusProduct: {
      if (n < 1 || n > 4) throw UnsupportedGroup("TorusProduct: r must be in [1,4]");
      g.rep_dim = n;
      g.rank = n;
      g.torus_dim = n;
      g.rep_weights = Eigen::MatrixXi::Identity(n, n);
      break;
    }
  }
  return g;
}

void validate_cocharacter(const GroupSpec& g, const Cocharacter& mu) {
  if (mu.weights.size() != g.torus_dim)
    throw Error("cocharacter weight vector has wrong length");
  if (g.family == GroupFamily::SUn && mu.weights.sum() != 0)
    throw Error("SUn cocharacter weights must sum to zero");
}

Matrix charge_matrix(const GroupSpec& g, const Cocharacter& mu) {
  validate_cocharacter(g, mu);
  Matrix m = Matrix::Zero(g.rep_dim, g.rep_dim);
  for (int i = 0; i < g.rep_dim; ++i) {
    long e = 0;
    for (int a = 0; a < g.torus_dim; ++a) e += g.rep_weights(i, a) * mu.weights[a];
    m(i, i) = static_cast<double>(e);
  }
  return m;
}

Matrix cochar_derivative(const GroupSpec& g, const Cocharacter& mu) {
  return Complex(0, 1) * charge_matrix(g, mu);
}

Matrix cochar_eval_angle(const GroupSpec& g, const Cocharacter& mu, double psi) {
  Matrix m = charge_matrix(g, mu);
  Matrix out = Matrix::Zero(g.rep_dim, g.rep_dim);
  for (int i = 0; i < g.rep_dim; ++i)
    out(i, i) = std::exp(Complex(0, m(i, i).real() * psi));
  return out;
}

Matrix cochar_eval(const GroupSpec& g, const Cocharacter& mu, Complex s) {
  Matrix m = charge_matrix(g, mu);
  Matrix out = Matrix::Zero(g.rep_dim, g.rep_dim);
  for (int i = 0; i < g.rep_dim; ++i) {
    long e = std::lround(m(i, i).real());
    out(i, i) = std::pow(s, static_cast<double>(e));
  }
  return out;
}

Vector torus_coords_of_algebra(const GroupSpec& g, const Matrix& X) {
  // Least-squares solve W·c = diag(X) against the integer weight matrix W.
  // For Un/SUn/torus this is the identity; for Sp2 it pairs opposite entries.
  Eigen::MatrixXd W = g.rep_weights.cast<double>();
  Vector d(g.rep_dim);
  for (int i = 0; i < g.rep_dim; ++i) d[i] = X(i, i);
  Eigen::MatrixXd M = (W.transpose() * W).inverse() * W.transpose();
  return M.cast<Complex>() * d;
}

Complex char_derivative(const GroupSpec& g, const Character& chi, const Matrix& X) {
  if (chi.weights.size() != g.torus_dim)
    throw Error("character weight vector has wrong length");
  Vector c = torus_coords_of_algebra(g, X);
  Complex out = 0;
  for (int a = 0; a < g.torus_dim; ++a) out += static_cast<double>(chi.weights[a]) * c[a];
  return out;
}

long pair_char_cochar(const Character& chi, const Cocharacter& mu) {
  if (chi.weights.size() != mu.weights.size())
    throw Error("character/cocharacter weight lengths differ");
  long s = 0;
  for (int a = 0; a < chi.weights.size(); ++a)
    s += static_cast<long>(chi.weights[a]) * mu.weights[a];
  return s;
}

Character det_character(const GroupSpec& g) {
  // Determinant of the representation: weight = column sums of rep_weights.
  // Identically trivial for SUn (pairs to zero on sum-zero cocharacters) and
  // for Sp2 (the x, x^{-1} entries cancel).
  Character chi;
  chi.name = "det";
  chi.weights = IVec::Zero(g.torus_dim);
  for (int a = 0; a < g.torus_dim; ++a)
    for (int i = 0; i < g.rep_dim; ++i) chi.weights[a] += g.rep_weights(i, a);
  return chi;
}

namespace {

std::vector<IVec> positive_roots(const GroupSpec& g) {
  std::vector<IVec> roots;
  if (g.family == GroupFamily::Un || g.family == GroupFamily::SUn) {
    for (int i = 0; i < g.torus_dim; ++i)
      for (int j = i + 1; j < g.torus_dim; ++j) {
        IVec r = IVec::Zero(g.torus_dim);
        r[i] = 1;
        r[j] = -1;
        roots.push_back(r);
      }
  } else if (g.family == GroupFamily::Sp2) {
    IVec r(2);
    r << 1, -1; roots.push_back(r);
    r << 0, 2;  roots.push_back(r);
    r << 1, 1;  roots.push_back(r);
    r << 2, 0;  roots.push_back(r);
  }
  return roots;
}

// Is the root in the integer span of the Levi simple roots (all but `omit`)?
bool in_levi_span(const GroupSpec& g, const IVec& root, int omit) {
  // Express root in the simple-root basis by rational elimination; the
  // supported ranks are <= 3 so a dense solve is fine.
  const int k = static_cast<int>(g.simple_roots.size());
  Eigen::MatrixXd A(g.torus_dim, k);
  for (int j = 0; j < k; ++j) A.col(j) = g.simple_roots[j].cast<double>();
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(root.cast<double>());
  if ((A * c - root.cast<double>()).norm() > 1e-9) return false;
  return std::abs(c[omit]) < 1e-9;
}

} // namespace

std::vector<ParabolicData> maximal_parabolics(const GroupSpec& g) {
  if (g.is_abelian())
    throw NoParabolics("abelian group has no proper parabolic subgroups");
  std::vector<ParabolicData> out;
  const auto pos = positive_roots(g);
  for (int p = 0; p < static_cast<int>(g.simple_roots.size()); ++p) {
    ParabolicData par;
    par.omitted_root = p;
    IVec sum = IVec::Zero(g.torus_dim);
    for (const auto& r : pos) {
      if (in_levi_span(g, r, p)) continue;
      par.unipotent_roots.push_back(r);
      sum += r;
    }
    par.stability_char.weights = sum;
    par.stability_char.name = "AdLu";
    if (g.family == GroupFamily::Un || g.family == GroupFamily::SUn) {
      par.levi_blocks = {p + 1, g.n - p - 1};
    } else {
      // Sp2 in basis (e1, e2, -e1, -e2): omitting the short root stabilizes
      // the isotropic line <e1>, omitting the long root the Lagrangian <e1,e2>.
      par.levi_blocks = (p == 0) ? std::vector<int>{1, 2, 1} : std::vector<int>{2, 2};
    }
    out.push_back(std::move(par));
  }
  return out;
}

std::vector<SignedPerm> weyl_group_elements(const GroupSpec& g) {
  std::vector<SignedPerm> elems = {identity_perm(g.torus_dim)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& s : g.weyl_generators) {
        SignedPerm c = compose(elems[i], s);
        if (std::find(elems.begin(), elems.end(), c) == elems.end()) {
          elems.push_back(c);
          grew = true;
          if (elems.size() > 64) throw Error("Weyl closure exceeded supported size");
        }
      }
    }
  }
  return elems;
}

std::vector<std::vector<Complex>> weyl_orbit(const GroupSpec& g,
                                             const std::vector<Complex>& t,
                                             double tol) {
  if (static_cast<int>(t.size()) != g.torus_dim)
    throw Error("torus tuple has wrong length");
  for (const auto& v : t)
    if (std::abs(v) == 0.0) throw Error("torus tuple has a zero coordinate");

  auto same = [tol](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
  };
  std::vector<std::vector<Complex>> orbit = {t};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& s : g.weyl_generators) {
      auto u = s.apply(orbit[i]);
      bool found = false;
      for (const auto& o : orbit)
        if (same(o, u)) { found = true; break; }
      if (!found) orbit.push_back(std::move(u));
    }
  }
  return orbit;
}

} // namespace mono
