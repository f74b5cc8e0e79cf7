#include "mono/fields.hpp"

#include <cmath>
#include <random>

namespace mono {

double bump_profile(double R, double r1, double r2) {
  if (R <= r1) return 1.0;
  if (R >= r2) return 0.0;
  double u = (R - r1) / (r2 - r1);
  double s = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
  return 1.0 - s;
}

namespace {

GaugeData zero_field(const GroupSpec& g, DomainPtr dom) {
  GaugeData f;
  f.group = g;
  f.domain = std::move(dom);
  const Matrix z = Matrix::Zero(g.rep_dim, g.rep_dim);
  f.A_t.assign(f.domain->sites(), z);
  f.A_x.assign(f.domain->sites(), z);
  f.A_y.assign(f.domain->sites(), z);
  f.higgs.assign(f.domain->sites(), z);
  return f;
}

void check_skew(const Matrix& m, const char* what) {
  if ((m + m.adjoint()).norm() > 1e-12 * (1.0 + m.norm()))
    throw Error(std::string(what) + " must be skew-Hermitian");
}

IVec charge_weights(const GroupSpec& g, const Cocharacter& mu) {
  validate_cocharacter(g, mu);
  return mu.weights;
}

void add_background(GaugeData& f, const Eigen::MatrixXi& degrees) {
  const auto& dom = *f.domain;
  f.clutch_degrees = degrees;
  const Complex i01(0, 1);
  for (int it = 0; it < dom.nt(); ++it) {
    Matrix M = f.clutch_matrix(it);
    if (M.norm() == 0) continue;
    for (int iy = 0; iy < dom.ny(); ++iy)
      for (int ix = 0; ix < dom.nx(); ++ix) {
        f.A_y[dom.index(ix, iy, it)] +=
            (-2.0 * kPi / dom.vol_sigma()) * dom.x_of(ix) * i01 * M;
      }
  }
}

} // namespace

GaugeData flat_field(const GroupSpec& g, DomainPtr dom) {
  return zero_field(g, std::move(dom));
}

GaugeData constant_higgs_field(const GroupSpec& g, DomainPtr dom, const Matrix& phi) {
  check_skew(phi, "constant Higgs field");
  GaugeData f = zero_field(g, std::move(dom));
  for (auto& h : f.higgs) h = phi;
  return f;
}

GaugeData random_smooth_field(const GroupSpec& g, DomainPtr dom, uint64_t seed,
                              double amplitude, int max_mode) {
  GaugeData f = zero_field(g, dom);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const int N = g.rep_dim;
  const auto& d = *dom;

  // band-limited Fourier synthesis with smooth decay, per component
  struct Mode {
    int kx, ky, kt;
    Matrix coef;
  };
  auto synth = [&](MatrixField& target) {
    std::vector<Mode> modes;
    for (int kt = -max_mode; kt <= max_mode; ++kt)
      for (int ky = -max_mode; ky <= max_mode; ++ky)
        for (int kx = -max_mode; kx <= max_mode; ++kx) {
          double k2 = kx * kx + ky * ky + kt * kt;
          Matrix c(N, N);
          for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) c(i, j) = Complex(nd(rng), nd(rng));
          c *= std::exp(-0.7 * k2);
          modes.push_back({kx, ky, kt, c});
        }
    for (int it = 0; it < d.nt(); ++it)
      for (int iy = 0; iy < d.ny(); ++iy)
        for (int ix = 0; ix < d.nx(); ++ix) {
          Matrix acc = Matrix::Zero(N, N);
          for (const auto& m : modes) {
            double ph = 2.0 * kPi * (m.kx * d.x_of(ix) / d.lx() +
                                     m.ky * d.y_of(iy) / d.ly() +
                                     m.kt * d.t_of(it) / d.tau());
            acc += (std::exp(Complex(0, ph)) * m.coef);
          }
          // project to skew-Hermitian and traceless when the group demands it
          Matrix s = 0.5 * (acc - acc.adjoint());
          if (g.family == GroupFamily::SUn)
            s -= (s.trace() / static_cast<double>(N)) * Matrix::Identity(N, N);
          if (g.family == GroupFamily::TorusProduct || g.rep_dim == 1)
            s = s.diagonal().asDiagonal();
          target[d.index(ix, iy, it)] = amplitude * s;
        }
  };
  synth(f.A_t);
  synth(f.A_x);
  synth(f.A_y);
  synth(f.higgs);
  return f;
}

GaugeData clutched_field(const GroupSpec& g, DomainPtr dom, const IVec& degrees,
                         double wiggle) {
  if (degrees.size() != g.torus_dim)
    throw Error("clutched_field: degree vector has wrong length");
  GaugeData f = zero_field(g, dom);
  Eigen::MatrixXi D(dom->nt(), g.torus_dim);
  for (int it = 0; it < dom->nt(); ++it) D.row(it) = degrees.transpose();
  add_background(f, D);
  if (wiggle != 0.0) {
    // add d(lambda) for smooth periodic lambda: degree unchanged, nonuniform F
    const auto& d = *dom;
    const Complex i01(0, 1);
    for (int it = 0; it < d.nt(); ++it)
      for (int iy = 0; iy < d.ny(); ++iy)
        for (int ix = 0; ix < d.nx(); ++ix) {
          double cx = std::cos(2.0 * kPi * d.x_of(ix) / d.lx());
          double sy = std::sin(2.0 * kPi * d.y_of(iy) / d.ly());
          Matrix I = Matrix::Identity(g.rep_dim, g.rep_dim);
          // lambda = wiggle * sin(2pi x/Lx) sin(2pi y/Ly)
          f.A_x[d.index(ix, iy, it)] +=
              i01 * wiggle * (2.0 * kPi / d.lx()) * cx * sy * I;
          double sx = std::sin(2.0 * kPi * d.x_of(ix) / d.lx());
          double cy = std::cos(2.0 * kPi * d.y_of(iy) / d.ly());
          f.A_y[d.index(ix, iy, it)] +=
              i01 * wiggle * (2.0 * kPi / d.ly()) * sx * cy * I;
        }
  }
  return f;
}

GaugeData dirac_embedded_field(const GroupSpec& g, DomainPtr dom,
                               const EmbedOptions& opt) {
  const auto& d = *dom;
  const auto& sing = d.singularities();
  if (sing.empty()) throw Error("dirac_embedded_field: domain has no singularities");

  IVec base = opt.base_degrees.size() == g.torus_dim
                  ? opt.base_degrees
                  : IVec(IVec::Zero(g.torus_dim));
  IVec total = base;
  for (const auto& s : sing) total += charge_weights(g, s.mu);
  if (opt.require_balanced && total != base)
    throw Error("dirac_embedded_field: charges must balance around the circle");

  double r1 = opt.r_plateau > 0 ? opt.r_plateau
                                : std::max(d.eps(), 2.0 * std::max(d.hx(), d.hy()));
  double r2 = opt.r_cut > 0 ? opt.r_cut : 2.5 * r1;
  double geom = 0.5 * std::min({d.lx(), d.ly(), d.tau()});
  if (!(r1 < r2) || r2 >= geom)
    throw BadGeometry("dirac_embedded_field: bump radii incompatible with the box");
  if (r1 < d.eps())
    throw BadGeometry("dirac_embedded_field: plateau must cover the matching annulus");

  GaugeData f = zero_field(g, dom);

  // per-slice degree vector: base plus the jumps below the slice time
  Eigen::MatrixXi D(d.nt(), g.torus_dim);
  for (int it = 0; it < d.nt(); ++it) {
    IVec row = base;
    for (const auto& s : sing)
      if (s.t < d.t_of(it)) row += charge_weights(g, s.mu);
    D.row(it) = row.transpose();
  }
  add_background(f, D);

  for (int it = 0; it < d.nt(); ++it)
    for (int iy = 0; iy < d.ny(); ++iy)
      for (int ix = 0; ix < d.nx(); ++ix) {
        const int s = d.index(ix, iy, it);
        if (d.masked(s)) continue;
        for (int j = 0; j < static_cast<int>(sing.size()); ++j) {
          Eigen::Vector3d rel = d.rel_to_singularity(d.t_of(it), d.z_of(ix, iy), j);
          double R = rel.norm();
          double b = bump_profile(R, r1, r2);
          if (b == 0.0) continue;
          Patch patch = rel[0] < 0 ? Patch::Plus : Patch::Minus;
          CartesianField c = dirac_cartesian(g, sing[j].mu, rel, patch);
          f.A_t[s] += b * c.A[0];
          f.A_x[s] += b * c.A[1];
          f.A_y[s] += b * c.A[2];
          f.higgs[s] += b * c.higgs;
        }
        if (opt.twist.size() > 0) f.higgs[s] += opt.twist;
      }
  return f;
}

GaugeData wu_yang_embedded_field(DomainPtr dom, double r_plateau, double r_cut,
                                 const Matrix& twist) {
  const auto& d = *dom;
  if (d.singularities().size() != 1)
    throw Error("wu_yang_embedded_field: exactly one singularity expected");
  {
    IVec w = d.singularities()[0].mu.weights;
    if (w.size() != 2 || w[0] != 1 || w[1] != -1)
      throw Error("wu_yang_embedded_field: singularity must carry mu = (1,-1)");
  }
  GroupSpec g = build_group(GroupFamily::SUn, 2);
  double geom = 0.5 * std::min({d.lx(), d.ly(), d.tau()});
  if (!(r_plateau < r_cut) || r_cut >= geom)
    throw BadGeometry("wu_yang_embedded_field: bump radii incompatible with the box");

  GaugeData f = zero_field(g, dom);
  if (twist.size() > 0) check_skew(twist, "twist");
  for (int it = 0; it < d.nt(); ++it)
    for (int iy = 0; iy < d.ny(); ++iy)
      for (int ix = 0; ix < d.nx(); ++ix) {
        const int s = d.index(ix, iy, it);
        if (d.masked(s)) continue;
        Eigen::Vector3d rel = d.rel_to_singularity(d.t_of(it), d.z_of(ix, iy), 0);
        double b = bump_profile(rel.norm(), r_plateau, r_cut);
        if (b > 0.0) {
          CartesianField c = wu_yang_su2(rel);
          f.A_t[s] += b * c.A[0];
          f.A_x[s] += b * c.A[1];
          f.A_y[s] += b * c.A[2];
          f.higgs[s] += b * c.higgs;
        }
        if (twist.size() > 0) f.higgs[s] += twist;
      }
  return f;
}

GaugeData exact_dirac_sample_field(const GroupSpec& g, DomainPtr dom, int j,
                                   Patch patch) {
  const auto& d = *dom;
  GaugeData f = zero_field(g, dom);
  for (int it = 0; it < d.nt(); ++it)
    for (int iy = 0; iy < d.ny(); ++iy)
      for (int ix = 0; ix < d.nx(); ++ix) {
        const int s = d.index(ix, iy, it);
        if (d.masked(s)) continue;
        Eigen::Vector3d rel = d.rel_to_singularity(d.t_of(it), d.z_of(ix, iy), j);
        try {
          CartesianField c = dirac_cartesian(g, d.singularities()[j].mu, rel, patch);
          f.A_t[s] = c.A[0];
          f.A_x[s] = c.A[1];
          f.A_y[s] = c.A[2];
          f.higgs[s] = c.higgs;
        } catch (const OnExcludedAxis&) {
          // site on the patch string; left zero, caller's mask decides
        }
      }
  return f;
}

AsymptoticsReport check_dirac_asymptotics(const GaugeData& f, int j) {
  const auto& d = *f.domain;
  const auto& s = d.singularities().at(j);
  Matrix m = charge_matrix(f.group, s.mu);
  Eigen::VectorXd half_k = (0.5 * m.diagonal().real()).eval();
  std::sort(half_k.data(), half_k.data() + half_k.size());

  AsymptoticsReport rep;
  const double h = std::min({d.hx(), d.hy(), d.ht()});
  for (int it = 0; it < d.nt(); ++it)
    for (int iy = 0; iy < d.ny(); ++iy)
      for (int ix = 0; ix < d.nx(); ++ix) {
        Eigen::Vector3d rel = d.rel_to_singularity(d.t_of(it), d.z_of(ix, iy), j);
        double R = rel.norm();
        if (R < 0.5 * d.eps() || R > d.eps()) continue;
        ++rep.annulus_sites;
        const int site = d.index(ix, iy, it);
        // Phi ~ i m/(2R): eigenvalues of -i*R*Phi (Hermitian) against k/2
        Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, -1) * R * f.higgs[site]);
        Eigen::VectorXd ev = es.eigenvalues();
        std::sort(ev.data(), ev.data() + ev.size());
        rep.max_higgs_dev = std::max(rep.max_higgs_dev, (ev - half_k).norm());
        // || grad(R Phi) || by one-sided differences in the radial direction
        Eigen::Vector3d rel2 = rel * (1.0 + h / R);
        double t2 = s.t + rel2[0];
        Complex z2 = s.z + Complex(rel2[1], rel2[2]);
        int jx = static_cast<int>(std::lround(t2 / d.ht()));
        (void)jx;
        int ix2 = static_cast<int>(std::lround((z2.real()) / d.hx())) % d.nx();
        int iy2 = static_cast<int>(std::lround((z2.imag()) / d.hy())) % d.ny();
        int it2 = static_cast<int>(std::lround(t2 / d.ht())) % d.nt();
        if (ix2 < 0) ix2 += d.nx();
        if (iy2 < 0) iy2 += d.ny();
        if (it2 < 0) it2 += d.nt();
        const int site2 = d.index(ix2, iy2, it2);
        if (d.masked(site2)) continue;
        double R2 = d.rel_to_singularity(d.t_of(it2), d.z_of(ix2, iy2), j).norm();
        Matrix diff = R2 * f.higgs[site2] - R * f.higgs[site];
        double step = std::abs(R2 - R);
        if (step > 1e-9)
          rep.max_grad_bound = std::max(rep.max_grad_bound, diff.norm() / step);
      }
  return rep;
}

} // namespace mono
