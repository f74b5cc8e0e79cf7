#include "mono/flow.hpp"

#include <chrono>
#include <cmath>

#include "mono/fields.hpp"
#include "mono/parallel.hpp"

namespace mono {

namespace {

double smoothstep_c2(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

bool site_pinned(const HolomorphicData& holo, int site) {
  return holo.is_pinned(site) || holo.domain->masked(site);
}

Matrix central_part(const GroupSpec& g, const Matrix& X) {
  const int N = g.rep_dim;
  switch (g.family) {
    case GroupFamily::Un:
      return (X.trace() / static_cast<double>(N)) * Matrix::Identity(N, N);
    case GroupFamily::TorusProduct: {
      Matrix d = Matrix::Zero(N, N);
      for (int i = 0; i < N; ++i) d(i, i) = X(i, i);
      return d;
    }
    default:
      return Matrix::Zero(N, N);
  }
}

} // namespace

HermitianMetric identity_metric(const GroupSpec& g, DomainPtr dom) {
  HermitianMetric m;
  m.group = g;
  m.domain = std::move(dom);
  m.h.assign(m.domain->sites(), Matrix::Identity(g.rep_dim, g.rep_dim));
  return m;
}

std::pair<MatrixField, double> flow_step_field(const HolomorphicData& holo,
                                               const HermitianMetric& m,
                                               const Matrix& K) {
  const auto& dom = *holo.domain;
  const int N = holo.n();
  const Complex i01(0, 1);
  DerivedFields der = derive_fields(holo, m);

  MatrixField step(dom.sites(), Matrix::Zero(N, N));
  parallel_for(dom.sites(), [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s) {
      if (site_pinned(holo, s)) continue;
      Matrix E = der.F_sigma[s] - der.cov_t_higgs[s] - K;
      Matrix raw = i01 * E;
      // project onto h-self-adjoint directions (metric deformations)
      const Matrix& h = m.h[s];
      Matrix proj = 0.5 * (raw + h.inverse() * raw.adjoint() * h);
      if (holo.group.family == GroupFamily::SUn)
        proj -= (proj.trace() / static_cast<double>(N)) * Matrix::Identity(N, N);
      step[s] = proj;
    }
  });

  // remove the central average so the perp equation is exactly solvable
  if (holo.group.family == GroupFamily::Un ||
      holo.group.family == GroupFamily::TorusProduct) {
    Matrix avg = Matrix::Zero(N, N);
    long count = 0;
    for (int s = 0; s < dom.sites(); ++s) {
      if (site_pinned(holo, s)) continue;
      avg += central_part(holo.group, step[s]);
      ++count;
    }
    if (count > 0) {
      avg /= static_cast<double>(count);
      for (int s = 0; s < dom.sites(); ++s)
        if (!site_pinned(holo, s)) step[s] -= avg;
    }
  }

  double resid = 0.0;
  for (int s = 0; s < dom.sites(); ++s)
    if (!site_pinned(holo, s)) resid = std::max(resid, step[s].norm());
  return {std::move(step), resid};
}

double l2_norm(const MatrixField& field) {
  double acc = 0.0;
  for (const auto& m : field) acc += m.squaredNorm();
  return std::sqrt(acc);
}

namespace {

HermitianMetric apply_step(const HolomorphicData& holo, const HermitianMetric& m,
                           const MatrixField& step, double s) {
  HermitianMetric out;
  out.group = m.group;
  out.domain = m.domain;
  out.h = m.h;
  const auto& dom = *m.domain;
  const int N = m.group.rep_dim;
  parallel_for(dom.sites(), [&](int lo, int hi) {
    for (int site = lo; site < hi; ++site) {
      if (site_pinned(holo, site)) continue;
      const Matrix& h = m.h[site];
      Eigen::LLT<Matrix> llt(h);
      if (llt.info() != Eigen::Success) throw StepBlowup("metric lost positivity");
      Matrix u = llt.matrixL().adjoint();
      Matrix W = u * (-s * step[site]) * u.inverse();
      Matrix hn = u.adjoint() * hermitian_exp(W) * u;
      hn = 0.5 * (hn + hn.adjoint());
      if (m.group.family == GroupFamily::SUn) {
        Complex det = hn.determinant();
        hn /= std::pow(std::abs(det), 1.0 / N);
      }
      out.h[site] = hn;
    }
  });
  return out;
}

void check_min_eig(const HermitianMetric& m, const HolomorphicData& holo) {
  const auto& dom = *m.domain;
  for (int s = 0; s < dom.sites(); ++s) {
    if (site_pinned(holo, s)) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.h[s]);
    if (es.eigenvalues()[0] < 1e-12)
      throw StepBlowup("metric eigenvalue fell below 1e-12");
  }
}

} // namespace

std::pair<HermitianMetric, FlowReport> flow_to_heb(const HermitianMetric& h0,
                                                   const HolomorphicData& holo,
                                                   const Matrix& K, double tol,
                                                   long max_iter,
                                                   const FlowOptions* opts) {
  const auto& dom = *holo.domain;
  FlowOptions defaults;
  const FlowOptions& o = opts ? *opts : defaults;

  double cres = commutator_residual(holo);
  if (cres > 1e-6)
    throw Error("flow_to_heb: holomorphic commutator residual " +
                std::to_string(cres) + " exceeds 1e-6");

  validate_metric(h0, holo.pinned);

  const double hmin = std::min({dom.hx(), dom.hy(), dom.ht()});
  double s = o.step0 > 0 ? o.step0 : 0.25 * hmin * hmin;
  const double s_min = s * 1e-6, s_max = s * 256.0;

  auto t_start = std::chrono::steady_clock::now();

  HermitianMetric h = h0;
  auto [step, resid] = flow_step_field(holo, h, K);
  double l2 = l2_norm(step);

  FlowReport rep;
  rep.residual_history.push_back(resid);
  rep.step_history.push_back(s);

  // Step control runs on the L2 residual (robust descent for the gradient
  // flow); the sup residual is what convergence and reports use.
  long iter = 0;
  while (iter < max_iter && resid > tol) {
    HermitianMetric h_try = apply_step(holo, h, step, s);
    MatrixField step_try;
    double resid_try;
    try {
      auto r = flow_step_field(holo, h_try, K);
      step_try = std::move(r.first);
      resid_try = r.second;
    } catch (const StepBlowup&) {
      if (s <= s_min) throw;
      s *= 0.5;
      continue;
    }
    double l2_try = l2_norm(step_try);
    bool ok = l2_try <= l2 * (1.0 + 1e-12) && resid_try <= resid * 1.5;
    if (!ok && s > s_min) {
      s *= 0.5;
      continue;
    }
    h = std::move(h_try);
    step = std::move(step_try);
    resid = resid_try;
    l2 = l2_try;
    ++iter;
    s = std::min(s * 1.1, s_max);
    rep.residual_history.push_back(resid);
    rep.step_history.push_back(s);
    if (o.checkpoint_every > 0 && o.on_checkpoint && iter % o.checkpoint_every == 0)
      o.on_checkpoint(iter, h, resid, s);
  }

  check_min_eig(h, holo);
  rep.iterations = iter;
  rep.converged = resid <= tol;
  rep.final_residual = resid;
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return {std::move(h), std::move(rep)};
}

HypothesisReport hypothesis_report(const HermitianMetric& m,
                                   const HolomorphicData& holo) {
  const auto& dom = *m.domain;
  HypothesisReport rep;
  rep.vol_y_eps = (dom.sites() - static_cast<double>(dom.masked_count())) *
                  dom.hx() * dom.hy() * dom.ht();
  DerivedFields der = derive_fields(holo, m);
  rep.min_eig = 1e300;
  rep.max_eig = 0;
  for (int s = 0; s < dom.sites(); ++s) {
    if (site_pinned(holo, s)) continue;
    Matrix lf = der.F_sigma[s] - der.cov_t_higgs[s];
    rep.sup_lambda_f = std::max(rep.sup_lambda_f, lf.norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.h[s]);
    rep.min_eig = std::min(rep.min_eig, es.eigenvalues().minCoeff());
    rep.max_eig = std::max(rep.max_eig, es.eigenvalues().maxCoeff());
  }
  return rep;
}

HermitianMetric build_parametrix(const MeromorphicPair& pair, DomainPtr dom,
                                 double blend_width) {
  const auto& d = *dom;
  const int N = pair.n();
  const auto& sing = d.singularities();

  // markers must agree with the domain's singularity list
  if (pair.markers.size() != sing.size())
    throw MismatchedSingularities("parametrix: marker count differs from domain");
  for (std::size_t j = 0; j < sing.size(); ++j) {
    if (std::abs(d.wrap_z(pair.markers[j].z - sing[j].z)) > 0.5 * std::min(d.hx(), d.hy()))
      throw MismatchedSingularities("parametrix: marker position differs from domain");
    if (pair.markers[j].mu.weights != sing[j].mu.weights)
      throw MismatchedSingularities("parametrix: marker charge differs from domain");
  }
  if (!sing.empty() && !(blend_width > 0 && blend_width < d.eps()))
    throw Error("parametrix: need 0 < blend_width < eps");

  // log(rho^dag rho) per column (zero on masked columns, replaced by the model)
  MatrixField L(d.slice_sites(), Matrix::Zero(N, N));
  for (int iy = 0; iy < d.ny(); ++iy)
    for (int ix = 0; ix < d.nx(); ++ix) {
      const int col = ix + d.nx() * iy;
      if (pair.column_mask[col]) continue;
      const Matrix& r = pair.rho[col];
      L[col] = hermitian_log_spd(r.adjoint() * r);
    }

  const double inner = std::max(0.5 * d.eps(), d.eps() - blend_width);

  HermitianMetric m;
  m.group = pair.group;
  m.domain = dom;
  m.h.assign(d.sites(), Matrix::Identity(N, N));

  for (int it = 0; it < d.nt(); ++it) {
    const double t = d.t_of(it);
    double w = smoothstep_c2((t - d.eps()) / (d.tau() - 2.0 * d.eps()));
    for (int iy = 0; iy < d.ny(); ++iy)
      for (int ix = 0; ix < d.nx(); ++ix) {
        const int col = ix + d.nx() * iy;
        const int site = d.index(ix, iy, it);
        Matrix logh = w * L[col];

        for (std::size_t j = 0; j < sing.size(); ++j) {
          Complex dz = d.wrap_z(d.z_of(ix, iy) - sing[j].z);
          double r = std::abs(dz);
          if (r >= d.eps()) continue;
          double beta = bump_profile(r, inner, d.eps());
          if (beta == 0.0) continue;

          // eigenframe near the singularity: from L at a reference ring site
          Complex dir = (r > 1e-9) ? dz / r : Complex(1, 0);
          double r_ref = std::max(r, 0.75 * d.eps());
          Complex z_ref = sing[j].z + r_ref * dir;
          int rx = static_cast<int>(std::lround(z_ref.real() / d.hx()));
          int ry = static_cast<int>(std::lround(z_ref.imag() / d.hy()));
          rx = (rx % d.nx() + d.nx()) % d.nx();
          ry = (ry % d.ny() + d.ny()) % d.ny();
          const int rcol = rx + d.nx() * ry;
          Matrix Lref = pair.column_mask[rcol] ? Matrix::Zero(N, N) : L[rcol];
          Eigen::SelfAdjointEigenSolver<Matrix> es(Lref);
          Matrix V = es.eigenvectors(); // columns, ascending eigenvalues

          // marker orders, descending, paired with ascending eigenvalues
          Matrix km = charge_matrix(pair.group, sing[j].mu);
          std::vector<double> ks(km.rows());
          for (int a = 0; a < km.rows(); ++a) ks[a] = km(a, a).real();
          std::sort(ks.begin(), ks.end(), std::greater<double>());

          double rr = std::max(r, 0.25 * std::min(d.hx(), d.hy()));
          double dt_band = t - sing[j].t; // band coordinate in [0, tau)
          Matrix diag = Matrix::Zero(N, N);
          for (int a = 0; a < N; ++a)
            diag(a, a) = -ks[a] * (std::asinh(dt_band / rr) +
                                   std::asinh(sing[j].t / rr));
          Matrix model = V * diag * V.adjoint();
          logh = (1.0 - beta) * logh + beta * model;
        }

        if (pair.group.family == GroupFamily::SUn)
          logh -= (logh.trace() / static_cast<double>(N)) * Matrix::Identity(N, N);
        m.h[site] = hermitian_exp(logh);
      }
  }
  return m;
}

} // namespace mono
