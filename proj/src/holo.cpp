#include "mono/holo.hpp"

#include <cmath>

#include "mono/parallel.hpp"

namespace mono {

namespace {

template <typename Fn>
Matrix hermitian_apply(const Matrix& X, Fn fn) {
  const int n = static_cast<int>(X.rows());
  if (n == 1) {
    Matrix r(1, 1);
    r(0, 0) = fn(X(0, 0).real());
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  Matrix H = 0.5 * (X + X.adjoint());
  if (n <= 3)
    es.computeDirect(H);
  else
    es.compute(H);
  Eigen::VectorXd ev = es.eigenvalues();
  Matrix D = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) D(i, i) = fn(ev[i]);
  return es.eigenvectors() * D * es.eigenvectors().adjoint();
}

} // namespace

Matrix hermitian_exp(const Matrix& X) {
  return hermitian_apply(X, [](double v) { return std::exp(v); });
}

Matrix hermitian_log_spd(const Matrix& X) {
  return hermitian_apply(X, [](double v) {
    if (v <= 0) throw StepBlowup("log of a non-positive matrix");
    return std::log(v);
  });
}

Matrix HolomorphicData::clutch_matrix(int it) const {
  const int N = group.rep_dim;
  Matrix M = Matrix::Zero(N, N);
  if (clutch_degrees.size() == 0) return M;
  for (int i = 0; i < N; ++i) {
    double e = 0;
    for (int a = 0; a < group.torus_dim; ++a)
      e += group.rep_weights(i, a) * clutch_degrees(it, a);
    M(i, i) = e;
  }
  return M;
}

namespace {

// x-wrap transition T(y) = exp(+(2 pi i / Ly) M y) of the Landau clutch.
Matrix clutch_T(const HolomorphicData& d, int it, int iy) {
  const Matrix M = d.clutch_matrix(it);
  Matrix T = Matrix::Identity(M.rows(), M.cols());
  if (M.norm() == 0) return T;
  const double y = d.domain->y_of(iy);
  for (int k = 0; k < M.rows(); ++k)
    T(k, k) = std::exp(Complex(0, 2.0 * kPi / d.domain->ly() * M(k, k).real() * y));
  return T;
}

enum class HF { A, C, H, B };

struct HoloStencil {
  const HolomorphicData& d;
  const MatrixField* h = nullptr;
  const MatrixField* b = nullptr;

  // fetch at (ix+dx, iy+dy) on slice it; |dx|,|dy| <= 1
  Matrix get(HF which, int ix, int iy, int it) const {
    const auto& dom = *d.domain;
    const int nx = dom.nx(), ny = dom.ny();
    int jx = ix, wrap = 0;
    if (ix >= nx) { jx -= nx; wrap = +1; }
    else if (ix < 0) { jx += nx; wrap = -1; }
    int jy = (iy % ny + ny) % ny;
    const int s = dom.index(jx, jy, it);
    Matrix v;
    switch (which) {
      case HF::A: v = d.a[s]; break;
      case HF::C: v = d.c[s]; break;
      case HF::H: v = (*h)[s]; break;
      case HF::B: v = (*b)[s]; break;
    }
    if (wrap != 0 && d.clutch_degrees.size() > 0) {
      const Matrix M = d.clutch_matrix(it);
      if (M.norm() > 0) {
        Matrix T = clutch_T(d, it, jy);
        const Matrix shift = (kPi / dom.ly()) * M; // real diagonal
        if (wrap > 0) {
          v = (T * v * T.inverse()).eval();
          if (which == HF::A) v += shift;
          if (which == HF::B) v -= shift;
        } else {
          v = (T.inverse() * v * T).eval();
          if (which == HF::A) v -= shift;
          if (which == HF::B) v += shift;
        }
      }
    }
    return v;
  }

  // del^- and del-bar^+ (compact pair)
  Matrix del_minus(HF which, int ix, int iy, int it) const {
    const auto& dom = *d.domain;
    Matrix v0 = get(which, ix, iy, it);
    Matrix dx = (v0 - get(which, ix - 1, iy, it)) / dom.hx();
    Matrix dy = (v0 - get(which, ix, iy - 1, it)) / dom.hy();
    return 0.5 * (dx - Complex(0, 1) * dy);
  }
  Matrix delbar_plus(HF which, int ix, int iy, int it) const {
    const auto& dom = *d.domain;
    Matrix v0 = get(which, ix, iy, it);
    Matrix dx = (get(which, ix + 1, iy, it) - v0) / dom.hx();
    Matrix dy = (get(which, ix, iy + 1, it) - v0) / dom.hy();
    return 0.5 * (dx + Complex(0, 1) * dy);
  }
  // central versions (diagnostics)
  Matrix delbar_central(HF which, int ix, int iy, int it) const {
    const auto& dom = *d.domain;
    Matrix dx = (get(which, ix + 1, iy, it) - get(which, ix - 1, iy, it)) /
                (2 * dom.hx());
    Matrix dy = (get(which, ix, iy + 1, it) - get(which, ix, iy - 1, it)) /
                (2 * dom.hy());
    return 0.5 * (dx + Complex(0, 1) * dy);
  }
};

// t-wrap fetches: h_cont(tau) = rho^dag h(0) rho, c_cont(tau) = rho^{-1} c rho;
// below zero the inverse transforms apply.
Matrix fetch_h_up(const HolomorphicData& d, const MatrixField& h, int ix, int iy,
                  int it_next) {
  const auto& dom = *d.domain;
  if (it_next < dom.nt()) return h[dom.index(ix, iy, it_next)];
  const Matrix& v = h[dom.index(ix, iy, 0)];
  if (!d.has_seam()) return v;
  const Matrix& r = d.rho_seam[ix + dom.nx() * iy];
  if (r.size() == 0) return v;
  return r.adjoint() * v * r;
}

Matrix fetch_c_up(const HolomorphicData& d, int ix, int iy, int it_next) {
  const auto& dom = *d.domain;
  if (it_next < dom.nt()) return d.c[dom.index(ix, iy, it_next)];
  const Matrix& v = d.c[dom.index(ix, iy, 0)];
  if (!d.has_seam()) return v;
  const Matrix& r = d.rho_seam[ix + dom.nx() * iy];
  if (r.size() == 0) return v;
  return r.inverse() * v * r;
}

} // namespace

HolomorphicData from_pair(const MeromorphicPair& pair) {
  const auto& dom = *pair.domain;
  HolomorphicData holo;
  holo.group = pair.group;
  holo.domain = pair.domain;
  const Matrix Z = Matrix::Zero(pair.n(), pair.n());
  holo.a.assign(dom.sites(), Z);
  holo.c.assign(dom.sites(), Z);
  holo.rho_seam.assign(dom.slice_sites(), Matrix());
  holo.pinned.assign(dom.sites(), 0);

  if (pair.slice_clutch.size() > 0) {
    holo.clutch_degrees.resize(dom.nt(), pair.group.torus_dim);
    for (int it = 0; it < dom.nt(); ++it)
      holo.clutch_degrees.row(it) = pair.slice_clutch.transpose();
  }

  for (int iy = 0; iy < dom.ny(); ++iy)
    for (int ix = 0; ix < dom.nx(); ++ix) {
      const int col = ix + dom.nx() * iy;
      for (int it = 0; it < dom.nt(); ++it)
        holo.a[dom.index(ix, iy, it)] = pair.slice_a[col];
      if (pair.column_mask[col]) {
        holo.rho_seam[col] = Matrix::Identity(pair.n(), pair.n());
        for (int it = 0; it < dom.nt(); ++it)
          holo.pinned[dom.index(ix, iy, it)] = 1;
      } else {
        holo.rho_seam[col] = pair.rho[col];
      }
    }
  // domain mask joins the pinned set
  for (int s = 0; s < dom.sites(); ++s)
    if (dom.masked(s)) holo.pinned[s] = 1;
  return holo;
}

double commutator_residual(const HolomorphicData& holo) {
  const auto& dom = *holo.domain;
  HoloStencil st{holo};
  double worst = 0.0;

  auto pinned_near = [&](int ix, int iy, int it) {
    auto p = [&](int a, int b, int c) {
      int ja = (a % dom.nx() + dom.nx()) % dom.nx();
      int jb = (b % dom.ny() + dom.ny()) % dom.ny();
      int jc = (c % dom.nt() + dom.nt()) % dom.nt();
      return holo.is_pinned(dom.index(ja, jb, jc)) ||
             dom.masked(dom.index(ja, jb, jc));
    };
    return p(ix, iy, it) || p(ix + 1, iy, it) || p(ix - 1, iy, it) ||
           p(ix, iy + 1, it) || p(ix, iy - 1, it) || p(ix, iy, it + 1) ||
           p(ix, iy, it - 1);
  };

  for (int it = 0; it < dom.nt(); ++it)
    for (int iy = 0; iy < dom.ny(); ++iy)
      for (int ix = 0; ix < dom.nx(); ++ix) {
        if (pinned_near(ix, iy, it)) continue;
        const int s = dom.index(ix, iy, it);
        // del-bar c (central)
        Matrix dbc = st.delbar_central(HF::C, ix, iy, it);
        // del_t a (central, seam-aware): a_cont includes the rho pullback
        Matrix a_up, a_dn;
        if (it + 1 < dom.nt()) {
          a_up = holo.a[dom.index(ix, iy, it + 1)];
        } else if (holo.has_seam() && holo.rho_seam[ix + dom.nx() * iy].size() > 0) {
          const Matrix& r = holo.rho_seam[ix + dom.nx() * iy];
          Matrix dbar_r =
              0.5 * ((holo.rho_seam[(ix + 1) % dom.nx() + dom.nx() * iy] -
                      holo.rho_seam[(ix - 1 + dom.nx()) % dom.nx() + dom.nx() * iy]) /
                         (2 * dom.hx()) +
                     Complex(0, 1) *
                         (holo.rho_seam[ix + dom.nx() * ((iy + 1) % dom.ny())] -
                          holo.rho_seam[ix + dom.nx() * ((iy - 1 + dom.ny()) % dom.ny())]) /
                         (2 * dom.hy()));
          a_up = r.inverse() * holo.a[dom.index(ix, iy, 0)] * r + r.inverse() * dbar_r;
        } else {
          a_up = holo.a[dom.index(ix, iy, 0)];
        }
        if (it - 1 >= 0) {
          a_dn = holo.a[dom.index(ix, iy, it - 1)];
        } else if (holo.has_seam() && holo.rho_seam[ix + dom.nx() * iy].size() > 0) {
          // a is t-independent in every seamed construction we build; the
          // downward continuation mirrors the upward one
          a_dn = 2.0 * holo.a[s] - a_up;
        } else {
          a_dn = holo.a[dom.index(ix, iy, dom.nt() - 1)];
        }
        Matrix dta = (a_up - a_dn) / (2 * dom.ht());
        const Matrix& a0 = holo.a[s];
        const Matrix& c0 = holo.c[s];
        Matrix e = dbc - dta + a0 * c0 - c0 * a0;
        worst = std::max(worst, e.norm());
      }
  return worst;
}

void validate_metric(const HermitianMetric& m, const std::vector<uint8_t>& skip) {
  const auto& dom = *m.domain;
  for (int s = 0; s < dom.sites(); ++s) {
    if (!skip.empty() && skip[s]) continue;
    if (dom.masked(s)) continue;
    const Matrix& h = m.h[s];
    if ((h - h.adjoint()).norm() > 1e-12 * (1.0 + h.norm()))
      throw Error("metric not Hermitian");
    Eigen::LLT<Matrix> llt(h);
    if (llt.info() != Eigen::Success)
      throw StepBlowup("metric not positive definite");
    if (m.group.family == GroupFamily::SUn &&
        std::abs(h.determinant() - Complex(1, 0)) > 1e-8)
      throw Error("SUn metric must have unit determinant");
  }
}

DerivedFields derive_fields(const HolomorphicData& holo, const HermitianMetric& m) {
  const auto& dom = *holo.domain;
  const int N = holo.n();
  const Matrix Z = Matrix::Zero(N, N);
  const Complex i01(0, 1);

  DerivedFields out;
  out.b.assign(dom.sites(), Z);
  out.F_sigma.assign(dom.sites(), Z);
  out.higgs.assign(dom.sites(), Z);
  out.A_t.assign(dom.sites(), Z);
  out.cov_t_higgs.assign(dom.sites(), Z);

  HoloStencil st{holo, &m.h, &out.b};

  // half-point Higgs between slices it and it+1, stored at index of it
  MatrixField phalf(dom.sites(), Z);
  parallel_for(dom.slice_sites(), [&](int lo, int hi) {
    for (int col = lo; col < hi; ++col) {
      int ix = col % dom.nx(), iy = col / dom.nx();
      for (int it = 0; it < dom.nt(); ++it) {
        const int s = dom.index(ix, iy, it);
        const Matrix& h0 = m.h[s];
        Matrix h1 = fetch_h_up(holo, m.h, ix, iy, it + 1);
        Eigen::LLT<Matrix> llt(h0);
        if (llt.info() != Eigen::Success)
          throw StepBlowup("metric lost positivity");
        Matrix u = llt.matrixL().adjoint(); // h0 = u^dag u
        Matrix uinv = u.inverse();
        Matrix W = uinv.adjoint() * h1 * uinv; // SPD
        Matrix Lt = u.inverse() * hermitian_log_spd(W) * u / dom.ht();
        Matrix c1 = fetch_c_up(holo, ix, iy, it + 1);
        Matrix cbar = 0.5 * (holo.c[s] + c1);
        Matrix conj_part = h0.inverse() * cbar.adjoint() * h0;
        phalf[s] = -0.5 * i01 * (Lt - conj_part - cbar);
      }
    }
  });

  // site Higgs, A_t, covariant t-derivative
  parallel_for(dom.slice_sites(), [&](int lo, int hi) {
    for (int col = lo; col < hi; ++col) {
      int ix = col % dom.nx(), iy = col / dom.nx();
      const Matrix* rho = nullptr;
      if (holo.has_seam() && holo.rho_seam[col].size() > 0)
        rho = &holo.rho_seam[col];
      for (int it = 0; it < dom.nt(); ++it) {
        const int s = dom.index(ix, iy, it);
        Matrix up = phalf[s];
        Matrix dn;
        if (it > 0) {
          dn = phalf[dom.index(ix, iy, it - 1)];
        } else {
          dn = phalf[dom.index(ix, iy, dom.nt() - 1)];
          if (rho) dn = (*rho) * dn * rho->inverse();
        }
        Matrix phi = 0.5 * (up + dn);
        Matrix At = holo.c[s] + i01 * phi;
        out.higgs[s] = phi;
        out.A_t[s] = At;
        out.cov_t_higgs[s] = (up - dn) / dom.ht() + At * phi - phi * At;
      }
    }
  });

  // b field, then the Sigma curvature. The h^{-1} del h part is taken in
  // log space (exact for abelian metrics, so the U(1) flow is exactly the
  // discrete Poisson problem).
  parallel_for(dom.nt(), [&](int lo, int hi) {
    for (int it = lo; it < hi; ++it)
      for (int iy = 0; iy < dom.ny(); ++iy)
        for (int ix = 0; ix < dom.nx(); ++ix) {
          const int s = dom.index(ix, iy, it);
          const Matrix& h = m.h[s];
          Eigen::LLT<Matrix> llt(h);
          if (llt.info() != Eigen::Success)
            throw StepBlowup("metric lost positivity");
          Matrix u = llt.matrixL().adjoint();
          Matrix uinv = u.inverse();
          auto slog_to = [&](const Matrix& other) -> Matrix {
            // log of h^{-1} other, base point h
            Matrix W = uinv.adjoint() * other * uinv;
            return uinv * hermitian_log_spd(W) * u;
          };
          Matrix Xd = -slog_to(st.get(HF::H, ix - 1, iy, it)) / dom.hx();
          Matrix Yd = -slog_to(st.get(HF::H, ix, iy - 1, it)) / dom.hy();
          Matrix hder = 0.5 * (Xd - Complex(0, 1) * Yd);
          out.b[s] = hder - h.inverse() * holo.a[s].adjoint() * h;
        }
  });
  parallel_for(dom.nt(), [&](int lo, int hi) {
    for (int it = lo; it < hi; ++it)
      for (int iy = 0; iy < dom.ny(); ++iy)
        for (int ix = 0; ix < dom.nx(); ++ix) {
          const int s = dom.index(ix, iy, it);
          Matrix F = st.del_minus(HF::A, ix, iy, it) -
                     st.delbar_plus(HF::B, ix, iy, it) +
                     out.b[s] * holo.a[s] - holo.a[s] * out.b[s];
          out.F_sigma[s] = -2.0 * i01 * F;
        }
  });
  return out;
}

GaugeData to_unitary(const HolomorphicData& holo, const HermitianMetric& m) {
  const auto& dom = *holo.domain;
  const int N = holo.n();
  const Matrix Z = Matrix::Zero(N, N);
  const Complex i01(0, 1);

  DerivedFields der = derive_fields(holo, m);

  // Cholesky frame field u with h = u^dag u
  MatrixField u(dom.sites(), Z);
  for (int s = 0; s < dom.sites(); ++s) {
    Eigen::LLT<Matrix> llt(m.h[s]);
    if (llt.info() != Eigen::Success) throw StepBlowup("metric lost positivity");
    u[s] = llt.matrixL().adjoint();
  }

  GaugeData g;
  g.group = holo.group;
  g.domain = holo.domain;
  g.clutch_degrees = holo.clutch_degrees;
  g.A_t.assign(dom.sites(), Z);
  g.A_x.assign(dom.sites(), Z);
  g.A_y.assign(dom.sites(), Z);
  g.higgs.assign(dom.sites(), Z);

  // u fetches: x-wrap conjugates by the clutch phase; t-wrap recomputed from
  // the transformed metric.
  auto fetch_u = [&](int ix, int iy, int it) -> Matrix {
    int wrap = 0;
    if (ix >= dom.nx()) { ix -= dom.nx(); wrap = +1; }
    else if (ix < 0) { ix += dom.nx(); wrap = -1; }
    int jy = (iy % dom.ny() + dom.ny()) % dom.ny();
    if (it >= dom.nt() || it < 0) {
      int col = ix + dom.nx() * jy;
      Matrix r = (holo.has_seam() && holo.rho_seam[col].size() > 0)
                     ? holo.rho_seam[col]
                     : Matrix::Identity(N, N);
      Matrix hh;
      if (it >= dom.nt())
        hh = r.adjoint() * m.h[dom.index(ix, jy, 0)] * r;
      else
        hh = (r.inverse()).adjoint() * m.h[dom.index(ix, jy, dom.nt() - 1)] *
             r.inverse();
      Eigen::LLT<Matrix> llt(hh);
      Matrix v = llt.matrixL().adjoint();
      // x-wrap of a t-wrapped fetch does not occur (|offsets| <= 1)
      return v;
    }
    Matrix v = u[dom.index(ix, jy, it)];
    if (wrap != 0 && holo.clutch_degrees.size() > 0) {
      Matrix T = clutch_T(holo, it, jy);
      v = wrap > 0 ? (T * v * T.inverse()).eval() : (T.inverse() * v * T).eval();
    }
    return v;
  };

  parallel_for(dom.nt(), [&](int lo, int hi) {
    for (int it = lo; it < hi; ++it)
      for (int iy = 0; iy < dom.ny(); ++iy)
        for (int ix = 0; ix < dom.nx(); ++ix) {
          const int s = dom.index(ix, iy, it);
          const Matrix& us = u[s];
          Matrix uinv = us.inverse();
          Matrix dux = (fetch_u(ix + 1, iy, it) - fetch_u(ix - 1, iy, it)) /
                       (2 * dom.hx());
          Matrix duy = (fetch_u(ix, iy + 1, it) - fetch_u(ix, iy - 1, it)) /
                       (2 * dom.hy());
          Matrix dut = (fetch_u(ix, iy, it + 1) - fetch_u(ix, iy, it - 1)) /
                       (2 * dom.ht());
          Matrix dbar_u = 0.5 * (dux + i01 * duy);
          Matrix del_u = 0.5 * (dux - i01 * duy);

          Matrix a_u = us * holo.a[s] * uinv - dbar_u * uinv;
          Matrix b_u = us * der.b[s] * uinv - del_u * uinv;
          Matrix At_u = us * der.A_t[s] * uinv - dut * uinv;
          Matrix Phi_u = us * der.higgs[s] * uinv;

          Matrix Ax = a_u + b_u;
          Matrix Ay = i01 * (b_u - a_u);
          // clean the FD-level Hermitian residue
          g.A_x[s] = 0.5 * (Ax - Ax.adjoint());
          g.A_y[s] = 0.5 * (Ay - Ay.adjoint());
          g.A_t[s] = 0.5 * (At_u - At_u.adjoint());
          g.higgs[s] = 0.5 * (Phi_u - Phi_u.adjoint());
        }
  });

  // unitary t-wrap seam W = u(0) rho u_tau^{-1}
  if (holo.has_seam()) {
    g.tseam.assign(dom.slice_sites(), Matrix::Identity(N, N));
    for (int iy = 0; iy < dom.ny(); ++iy)
      for (int ix = 0; ix < dom.nx(); ++ix) {
        const int col = ix + dom.nx() * iy;
        if (holo.rho_seam[col].size() == 0) continue;
        const Matrix& r = holo.rho_seam[col];
        Matrix h_tau = r.adjoint() * m.h[dom.index(ix, iy, 0)] * r;
        Eigen::LLT<Matrix> llt(h_tau);
        Matrix u_tau = llt.matrixL().adjoint();
        g.tseam[col] = u[dom.index(ix, iy, 0)] * r * u_tau.inverse();
      }
  }
  return g;
}

} // namespace mono
