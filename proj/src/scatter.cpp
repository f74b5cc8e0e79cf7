#include "mono/scatter.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace mono {

namespace {

// Bilinear interpolation of a matrix field on one t-slice, x-wrap aware.
// The clutch transition is ignored here: interpolation never crosses the
// wrap by more than one cell and callers keep probes away from the seam
// unless the field is clutch-free; monodromy columns are sampled at sites.
Matrix bilerp_slice(const GaugeData& f, const MatrixField& field, int it,
                    Complex z) {
  const auto& d = *f.domain;
  double fx = z.real() / d.hx(), fy = z.imag() / d.hy();
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  double ax = fx - ix, ay = fy - iy;
  auto at = [&](int a, int b) -> const Matrix& {
    int ja = (a % d.nx() + d.nx()) % d.nx();
    int jb = (b % d.ny() + d.ny()) % d.ny();
    return field[d.index(ja, jb, it)];
  };
  return (1 - ax) * (1 - ay) * at(ix, iy) + ax * (1 - ay) * at(ix + 1, iy) +
         (1 - ax) * ay * at(ix, iy + 1) + ax * ay * at(ix + 1, iy + 1);
}

// dγ/dt coefficient M(t,z) = iΦ - A_t with linear interpolation in t.
Matrix rhs_coef(const GaugeData& f, Complex z, double t) {
  const auto& d = *f.domain;
  double ft = t / d.ht();
  int it = static_cast<int>(std::floor(ft));
  double at = ft - it;
  int i0 = (it % d.nt() + d.nt()) % d.nt();
  int i1 = (i0 + 1) % d.nt();
  const Complex i01(0, 1);
  Matrix m0 = i01 * bilerp_slice(f, f.higgs, i0, z) - bilerp_slice(f, f.A_t, i0, z);
  Matrix m1 = i01 * bilerp_slice(f, f.higgs, i1, z) - bilerp_slice(f, f.A_t, i1, z);
  return (1 - at) * m0 + at * m1;
}

} // namespace

Matrix scatter_segment(const GaugeData& f, Complex z, double t0, double t1,
                       int refine) {
  const auto& d = *f.domain;
  if (t1 < t0) throw Error("scatter_segment: t1 < t0");
  // segment distance to each excision ball
  for (int j = 0; j < static_cast<int>(d.singularities().size()); ++j) {
    const auto& s = d.singularities()[j];
    double dz = std::abs(d.wrap_z(z - s.z));
    // closest wrapped approach of [t0,t1] to t_j
    double best = 1e300;
    for (double tj = s.t; tj < t1 + d.tau(); tj += d.tau()) {
      double tt = std::clamp(tj, t0, t1);
      best = std::min(best, std::abs(tt - tj));
      if (tj > t1 + d.tau()) break;
    }
    for (double tj = s.t; tj > t0 - d.tau(); tj -= d.tau()) {
      double tt = std::clamp(tj, t0, t1);
      best = std::min(best, std::abs(tt - tj));
    }
    if (std::hypot(best, dz) < 0.5 * d.eps())
      throw SegmentHitsSingularity("scattering segment meets an excision ball");
  }

  int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / d.ht()))) * refine;
  double h = (t1 - t0) / steps;
  Matrix g = Matrix::Identity(f.n(), f.n());
  for (int k = 0; k < steps; ++k) {
    double t = t0 + k * h;
    Matrix k1 = rhs_coef(f, z, t) * g;
    Matrix k2 = rhs_coef(f, z, t + 0.5 * h) * (g + 0.5 * h * k1);
    Matrix k3 = rhs_coef(f, z, t + 0.5 * h) * (g + 0.5 * h * k2);
    Matrix k4 = rhs_coef(f, z, t + h) * (g + h * k3);
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return g;
}

MeromorphicPair monodromy_pair(const GaugeData& f) {
  const auto& d = *f.domain;
  for (const auto& s : d.singularities())
    if (std::abs(d.wrap_t(0.0 - s.t)) < d.eps())
      throw Error("monodromy_pair: t = 0 must be a non-singular time");

  MeromorphicPair pair;
  pair.group = f.group;
  pair.domain = f.domain;
  pair.markers = d.singularities();
  pair.column_mask.assign(d.slice_sites(), 0);
  pair.rho.assign(d.slice_sites(), Matrix());
  pair.slice_a.assign(d.slice_sites(), Matrix());
  if (f.has_clutch()) pair.slice_clutch = f.clutch_degrees.row(0).transpose();

  const Complex i01(0, 1);
  for (int iy = 0; iy < d.ny(); ++iy)
    for (int ix = 0; ix < d.nx(); ++ix) {
      const int col = ix + d.nx() * iy;
      Complex z = d.z_of(ix, iy);
      pair.slice_a[col] =
          0.5 * (f.A_x[d.index(ix, iy, 0)] + i01 * f.A_y[d.index(ix, iy, 0)]);
      bool masked = false;
      for (int j = 0; j < static_cast<int>(d.singularities().size()); ++j)
        if (std::abs(d.wrap_z(z - d.singularities()[j].z)) < 0.5 * d.eps())
          masked = true;
      if (masked) {
        pair.column_mask[col] = 1;
        continue;
      }
      Matrix T = scatter_segment(f, z, 0.0, d.tau());
      Matrix W = f.tseam.empty() ? Matrix::Identity(f.n(), f.n()) : f.tseam[col];
      pair.rho[col] = W * T;
    }

  pair.degree_k0 = static_cast<int>(
      std::lround(slice_degree(f, det_character(f.group), 0.0)));
  return pair;
}

Matrix interp_rho(const MeromorphicPair& pair, Complex z) {
  const auto& d = *pair.domain;
  double fx = z.real() / d.hx(), fy = z.imag() / d.hy();
  int ix = static_cast<int>(std::floor(fx));
  int iy = static_cast<int>(std::floor(fy));
  double ax = fx - ix, ay = fy - iy;
  auto at = [&](int a, int b) -> const Matrix& {
    int ja = (a % d.nx() + d.nx()) % d.nx();
    int jb = (b % d.ny() + d.ny()) % d.ny();
    if (pair.column_mask[ja + d.nx() * jb])
      throw SegmentHitsSingularity("interp_rho: masked column");
    return pair.rho[ja + d.nx() * jb];
  };
  return (1 - ax) * (1 - ay) * at(ix, iy) + ax * (1 - ay) * at(ix + 1, iy) +
         (1 - ax) * ay * at(ix, iy + 1) + ax * ay * at(ix + 1, iy + 1);
}

IVec dominant_orders(const GroupSpec& g, IVec orders) {
  std::sort(orders.data(), orders.data() + orders.size(),
            [](int a, int b) { return a > b; });
  if (g.family == GroupFamily::Sp2) {
    IVec out(2);
    out << orders[0], orders[1];
    return out;
  }
  return orders;
}

Factorization local_factorize(const MeromorphicPair& pair, int j,
                              const std::vector<double>& radii) {
  const auto& d = *pair.domain;
  if (radii.size() < 3)
    throw Error("local_factorize: need at least 3 radii");
  const auto& s = pair.markers.at(j);
  const int N = pair.n();

  // geometric mean of each singular value over a circle, per radius
  const int n_samples = 64;
  std::vector<std::vector<double>> logs(radii.size(),
                                        std::vector<double>(N, 0.0));
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (radii[r] < 0.5 * d.eps())
      throw Error("local_factorize: radius inside the masked column");
    for (int k = 0; k < n_samples; ++k) {
      double ang = 2.0 * kPi * k / n_samples;
      Complex z = s.z + radii[r] * Complex(std::cos(ang), std::sin(ang));
      z = Complex(std::fmod(z.real() + 10 * d.lx(), d.lx()),
                  std::fmod(z.imag() + 10 * d.ly(), d.ly()));
      Matrix rho = interp_rho(pair, z);
      Eigen::JacobiSVD<Matrix> svd(rho);
      for (int a = 0; a < N; ++a)
        logs[r][a] += std::log(std::max(svd.singularValues()[a], 1e-300));
    }
    for (int a = 0; a < N; ++a) logs[r][a] /= n_samples;
  }

  // least-squares slope of log sigma_a against log r
  double mean_lr = 0;
  std::vector<double> lr(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) {
    lr[r] = std::log(radii[r]);
    mean_lr += lr[r];
  }
  mean_lr /= radii.size();
  double denom = 0;
  for (double v : lr) denom += (v - mean_lr) * (v - mean_lr);

  Factorization out;
  out.orders.resize(N);
  double worst = 0;
  std::vector<double> slopes(N);
  for (int a = 0; a < N; ++a) {
    double num = 0, mean_ls = 0;
    for (std::size_t r = 0; r < radii.size(); ++r) mean_ls += logs[r][a];
    mean_ls /= radii.size();
    for (std::size_t r = 0; r < radii.size(); ++r)
      num += (lr[r] - mean_lr) * (logs[r][a] - mean_ls);
    slopes[a] = num / denom;
    worst = std::max(worst, std::abs(slopes[a] - std::lround(slopes[a])));
  }
  out.condition = worst;
  if (worst > 0.25)
    throw IllConditioned("local_factorize: orders not resolvable at this mesh");
  std::vector<long> rounded(N);
  for (int a = 0; a < N; ++a) rounded[a] = std::lround(slopes[a]);
  std::sort(rounded.begin(), rounded.end(), std::greater<long>());
  for (int a = 0; a < N; ++a) out.orders[a] = static_cast<int>(rounded[a]);
  out.mu_hat.weights = dominant_orders(pair.group, out.orders);
  return out;
}

} // namespace mono
