#include "mono/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mono {

namespace {

double positive_mod(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0) r += period;
  return r;
}

double min_image(double d, double period) {
  double r = positive_mod(d, period);
  if (r > 0.5 * period) r -= period;
  return r;
}

} // namespace

LatticeDomain::LatticeDomain(const DomainConfig& cfg) {
  if (!(cfg.period1.real() > 0.0) || std::abs(cfg.period1.imag()) > 1e-14)
    throw BadGeometry("period1 must be real and positive (rectangular torus)");
  if (!(cfg.period2.imag() > 0.0) || std::abs(cfg.period2.real()) > 1e-14)
    throw BadGeometry("period2 must be purely imaginary (rectangular torus)");
  if (cfg.tau <= 0) throw BadGeometry("tau must be positive");
  if (cfg.nx < 4 || cfg.ny < 4 || cfg.nt < 4)
    throw BadGeometry("grid must be at least 4 in every direction");

  lx_ = cfg.period1.real();
  ly_ = cfg.period2.imag();
  tau_ = cfg.tau;
  nx_ = cfg.nx;
  ny_ = cfg.ny;
  nt_ = cfg.nt;
  eps_ = cfg.excision_radius;
  sing_ = cfg.singularities;

  std::vector<double> times;
  for (const auto& s : sing_) times.push_back(s.t);
  if (!std::is_sorted(times.begin(), times.end(),
                      [](double a, double b) { return a <= b; }))
    throw BadGeometry("singular times must be strictly increasing");
  for (double t : times)
    if (t <= 0 || t >= tau_)
      throw BadGeometry("singular times must lie strictly inside (0, tau)");

  for (std::size_t i = 0; i < sing_.size(); ++i)
    for (std::size_t j = i + 1; j < sing_.size(); ++j) {
      if (std::abs(wrap_z(sing_[i].z - sing_[j].z)) < 1e-12)
        throw BadGeometry("singular points must project to distinct z_j");
    }

  if (!sing_.empty()) {
    if (eps_ <= 0) throw BadGeometry("excision radius must be positive");
    double min_gap = times.front(); // gap from t=0
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
      min_gap = std::min(min_gap, times[i + 1] - times[i]);
    min_gap = std::min(min_gap, tau_ - times.back());
    if (4.0 * eps_ >= min_gap)
      throw BadGeometry("need 4*eps < min(t_1, t_2-t_1, ..., tau-t_N)");
    double min_pair = 1e300;
    for (std::size_t i = 0; i < sing_.size(); ++i)
      for (std::size_t j = i + 1; j < sing_.size(); ++j) {
        double dt = min_image(sing_[i].t - sing_[j].t, tau_);
        Complex dz = wrap_z(sing_[i].z - sing_[j].z);
        min_pair = std::min(min_pair, std::hypot(dt, std::abs(dz)));
      }
    if (sing_.size() > 1 && eps_ >= 0.5 * min_pair)
      throw BadGeometry("need eps < half the minimal pairwise singularity distance");
  }

  mask_.assign(sites(), 0);
  for (int it = 0; it < nt_; ++it)
    for (int iy = 0; iy < ny_; ++iy)
      for (int ix = 0; ix < nx_; ++ix) {
        double t = t_of(it);
        Complex z = z_of(ix, iy);
        for (std::size_t j = 0; j < sing_.size(); ++j) {
          if (dist3(t, z, static_cast<int>(j)) < 0.5 * eps_) {
            mask_[index(ix, iy, it)] = 1;
            break;
          }
        }
      }
}

double LatticeDomain::wrap_t(double dt) const { return min_image(dt, tau_); }
double LatticeDomain::wrap_x(double dx) const { return min_image(dx, lx_); }
double LatticeDomain::wrap_y(double dy) const { return min_image(dy, ly_); }

Complex LatticeDomain::wrap_z(Complex dz) const {
  return {min_image(dz.real(), lx_), min_image(dz.imag(), ly_)};
}

Eigen::Vector3d LatticeDomain::rel_to_singularity(double t, Complex z, int j) const {
  const auto& s = sing_[j];
  Complex dz = wrap_z(z - s.z);
  return {wrap_t(t - s.t), dz.real(), dz.imag()};
}

double LatticeDomain::dist3(double t, Complex z, int j) const {
  return rel_to_singularity(t, z, j).norm();
}

std::size_t LatticeDomain::masked_count() const {
  std::size_t n = 0;
  for (auto m : mask_) n += m;
  return n;
}

bool LatticeDomain::near_singular_time(double t) const {
  for (const auto& s : sing_)
    if (std::abs(wrap_t(t - s.t)) < eps_) return true;
  return false;
}

DomainPtr build_domain(const DomainConfig& cfg) {
  return std::make_shared<LatticeDomain>(cfg);
}

Matrix GaugeData::clutch_matrix(int it) const {
  const int N = group.rep_dim;
  Matrix M = Matrix::Zero(N, N);
  if (!has_clutch()) return M;
  for (int i = 0; i < N; ++i) {
    double e = 0;
    for (int a = 0; a < group.torus_dim; ++a)
      e += group.rep_weights(i, a) * clutch_degrees(it, a);
    M(i, i) = e;
  }
  return M;
}

namespace {

enum class Comp { At, Ax, Ay, Higgs };

const MatrixField& field_of(const GaugeData& f, Comp c) {
  switch (c) {
    case Comp::At: return f.A_t;
    case Comp::Ax: return f.A_x;
    case Comp::Ay: return f.A_y;
    case Comp::Higgs: return f.higgs;
  }
  return f.higgs;
}

// Seam-aware fetch at (ix+dx, iy+dy, it+dt), single-step offsets.
// The x-wrap carries the Landau transition of the clutch background
// T(y) = exp(+(2 pi i / Ly) M y); A_y picks up the inhomogeneous shift.
Matrix fetch(const GaugeData& f, Comp c, int ix, int iy, int it) {
  const auto& dom = *f.domain;
  const int nx = dom.nx(), ny = dom.ny(), nt = dom.nt();
  int jt = (it % nt + nt) % nt;

  int jx = ix, wrap_dir = 0;
  if (ix >= nx) { jx = ix - nx; wrap_dir = +1; }
  else if (ix < 0) { jx = ix + nx; wrap_dir = -1; }
  int jy = (iy % ny + ny) % ny;

  Matrix v = field_of(f, c)[dom.index(jx, jy, jt)];

  // t-wrap transition W with v(0-chart) = W * v(tau-chart); adjoint-valued
  // fields continue as f(tau) = W^{-1} f(0) W.
  if ((it >= nt || it < 0) && !f.tseam.empty()) {
    const Matrix& W = f.tseam[jx + nx * jy];
    if (it >= nt) v = (W.inverse() * v * W).eval();
    else v = (W * v * W.inverse()).eval();
  }

  if (wrap_dir != 0 && f.has_clutch()) {
    const Matrix M = f.clutch_matrix(jt);
    if (M.norm() > 0) {
      const double ly = dom.ly();
      const Complex i01(0, 1);
      Matrix T = Matrix::Zero(M.rows(), M.cols());
      for (int k = 0; k < M.rows(); ++k)
        T(k, k) = std::exp(i01 * (2.0 * kPi / ly) * M(k, k).real() * dom.y_of(jy));
      const Matrix shift = (2.0 * kPi / ly) * i01 * M;
      if (wrap_dir > 0) {
        v = (T * v * T.inverse()).eval();
        if (c == Comp::Ay) v -= shift;
      } else {
        v = (T.inverse() * v * T).eval();
        if (c == Comp::Ay) v += shift;
      }
    }
  }
  return v;
}

Matrix d_central(const GaugeData& f, Comp c, int axis, int ix, int iy, int it) {
  const auto& dom = *f.domain;
  double h = axis == 0 ? dom.ht() : (axis == 1 ? dom.hx() : dom.hy());
  int dx = axis == 1, dy = axis == 2, dt = axis == 0;
  Matrix up = fetch(f, c, ix + dx, iy + dy, it + dt);
  Matrix dn = fetch(f, c, ix - dx, iy - dy, it - dt);
  return (up - dn) / (2.0 * h);
}

bool stencil_clear(const GaugeData& f, int ix, int iy, int it) {
  const auto& dom = *f.domain;
  auto m = [&](int a, int b, int c) {
    int ja = (a % dom.nx() + dom.nx()) % dom.nx();
    int jb = (b % dom.ny() + dom.ny()) % dom.ny();
    int jc = (c % dom.nt() + dom.nt()) % dom.nt();
    return dom.masked(dom.index(ja, jb, jc));
  };
  return !(m(ix, iy, it) || m(ix + 1, iy, it) || m(ix - 1, iy, it) ||
           m(ix, iy + 1, it) || m(ix, iy - 1, it) || m(ix, iy, it + 1) ||
           m(ix, iy, it - 1));
}

} // namespace

Matrix curvature_xy(const GaugeData& f, int ix, int iy, int it) {
  Matrix dxAy = d_central(f, Comp::Ay, 1, ix, iy, it);
  Matrix dyAx = d_central(f, Comp::Ax, 2, ix, iy, it);
  const auto& dom = *f.domain;
  const Matrix& Ax = f.A_x[dom.index(ix, iy, it)];
  const Matrix& Ay = f.A_y[dom.index(ix, iy, it)];
  return dxAy - dyAx + Ax * Ay - Ay * Ax;
}

Matrix cov_t_higgs(const GaugeData& f, int ix, int iy, int it) {
  Matrix dtPhi = d_central(f, Comp::Higgs, 0, ix, iy, it);
  const auto& dom = *f.domain;
  const Matrix& At = f.A_t[dom.index(ix, iy, it)];
  const Matrix& Phi = f.higgs[dom.index(ix, iy, it)];
  return dtPhi + At * Phi - Phi * At;
}

HebResidual heb_residual(const GaugeData& f, const Matrix& K) {
  const auto& dom = *f.domain;
  HebResidual r;
  const Complex i01(0, 1);
  for (int it = 0; it < dom.nt(); ++it)
    for (int iy = 0; iy < dom.ny(); ++iy)
      for (int ix = 0; ix < dom.nx(); ++ix) {
        if (!stencil_clear(f, ix, iy, it)) continue;
        const int s = dom.index(ix, iy, it);
        Matrix e1 = curvature_xy(f, ix, iy, it) - cov_t_higgs(f, ix, iy, it) - K;
        r.r1 = std::max(r.r1, e1.norm());

        // [del-bar + a, del_t + c], a = (A_x + i A_y)/2, c = A_t - i Phi
        Matrix a = 0.5 * (f.A_x[s] + i01 * f.A_y[s]);
        Matrix c = f.A_t[s] - i01 * f.higgs[s];
        Matrix dbar_c = 0.5 * (d_central(f, Comp::At, 1, ix, iy, it) +
                               i01 * d_central(f, Comp::At, 2, ix, iy, it) -
                               i01 * (d_central(f, Comp::Higgs, 1, ix, iy, it) +
                                      i01 * d_central(f, Comp::Higgs, 2, ix, iy, it)));
        Matrix dt_a = 0.5 * (d_central(f, Comp::Ax, 0, ix, iy, it) +
                             i01 * d_central(f, Comp::Ay, 0, ix, iy, it));
        Matrix e2 = dbar_c - dt_a + a * c - c * a;
        r.r2 = std::max(r.r2, e2.norm());
      }
  return r;
}

double slice_degree(const GaugeData& f, const Character& chi, double t) {
  const auto& dom = *f.domain;
  if (dom.near_singular_time(t))
    throw SingularSlice("slice time is within eps of a singular time");
  int it = static_cast<int>(std::lround(t / dom.ht())) % dom.nt();
  if (it < 0) it += dom.nt();

  const Complex i01(0, 1);
  const double cell = dom.hx() * dom.hy();
  double sum = 0.0, covered = 0.0;
  for (int iy = 0; iy < dom.ny(); ++iy)
    for (int ix = 0; ix < dom.nx(); ++ix) {
      if (dom.masked(dom.index(ix, iy, it))) continue;
      Matrix F = curvature_xy(f, ix, iy, it);
      sum += (i01 / (2.0 * kPi) * char_derivative(f.group, chi, F)).real() * cell;
      covered += cell;
    }
  if (covered == 0.0) throw SingularSlice("slice fully masked");
  return sum * (dom.vol_sigma() / covered);
}

DegreeResult monopole_degree(const GaugeData& f, const Character& chi) {
  const auto& dom = *f.domain;
  const auto& sing = dom.singularities();

  // interval boundaries (cyclic); with no singularities a single interval
  std::vector<double> bounds;
  for (const auto& s : sing) bounds.push_back(s.t);
  if (bounds.empty()) bounds.push_back(0.0);
  const int m = static_cast<int>(bounds.size());

  auto interval_of = [&](double t) {
    for (int i = 0; i < m; ++i) {
      double a = bounds[i];
      double b = (i + 1 < m) ? bounds[i + 1] : bounds[0] + dom.tau();
      double tt = t;
      while (tt < a) tt += dom.tau();
      if (tt >= a && tt < b) return i;
    }
    return 0;
  };

  std::vector<double> sums(m, 0.0), counts(m, 0.0);
  std::vector<double> lo(m, 1e300), hi(m, -1e300);
  for (int it = 0; it < dom.nt(); ++it) {
    double t = dom.t_of(it);
    if (dom.near_singular_time(t)) continue;
    double v = slice_degree(f, chi, t);
    int i = interval_of(t);
    sums[i] += v;
    counts[i] += 1.0;
    lo[i] = std::min(lo[i], v);
    hi[i] = std::max(hi[i], v);
  }

  DegreeResult out;
  for (int i = 0; i < m; ++i) {
    double a = bounds[i];
    double b = (i + 1 < m) ? bounds[i + 1] : bounds[0] + dom.tau();
    double len = b - a;
    if (counts[i] == 0.0) throw SingularSlice("an interval has no usable slices");
    out.value += (sums[i] / counts[i]) * len;
    double skipped = sing.empty() ? 0.0 : std::min(len, 2.0 * dom.eps());
    out.est_error += (skipped / dom.tau()) * std::max(0.0, hi[i] - lo[i]);
  }
  out.value /= dom.tau();
  return out;
}

double discrete_degree(const GroupSpec& g, const Matrix& K, double vol_sigma,
                       double tau, const std::vector<Singularity>& sing,
                       const Character& chi) {
  for (std::size_t j = 0; j < sing.size(); ++j) {
    if (sing[j].t <= 0 || sing[j].t >= tau)
      throw Error("discrete_degree: singular times must lie in (0, tau)");
    if (j > 0 && sing[j].t <= sing[j - 1].t)
      throw Error("discrete_degree: singular times must be sorted");
  }
  const Complex i01(0, 1);
  double out = (i01 / (2.0 * kPi) * char_derivative(g, chi, K)).real() * vol_sigma;
  for (const auto& s : sing)
    out += (tau - s.t) * static_cast<double>(pair_char_cochar(chi, s.mu)) / tau;
  return out;
}

Matrix central_from_degrees(const GroupSpec& g, const IVec& degrees, double vol_sigma) {
  Cocharacter d{degrees};
  Matrix M = charge_matrix(g, d);
  return (-2.0 * kPi / vol_sigma) * Complex(0, 1) * M;
}

} // namespace mono
