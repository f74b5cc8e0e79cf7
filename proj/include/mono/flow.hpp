#pragma once

#include <functional>

#include "mono/holo.hpp"

namespace mono {

struct FlowOptions {
  double tol = 1e-6;
  long max_iter = 10000;
  double step0 = 0.0; // 0 = automatic from the mesh
  int checkpoint_every = 0;
  std::function<void(long iter, const HermitianMetric&, double resid, double step)>
      on_checkpoint;
};

struct FlowReport {
  long iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  double wall_time = 0.0;
  std::vector<double> residual_history;
  std::vector<double> step_history;
};

struct HypothesisReport {
  double vol_y_eps = 0.0;    // volume of the excised domain
  double sup_lambda_f = 0.0; // sup |Lambda F_h| over unpinned interior sites
  double min_eig = 0.0;
  double max_eig = 0.0;
};

HermitianMetric identity_metric(const GroupSpec& g, DomainPtr dom);

/// Partition-of-unity parametrix: exp(w(t) log(rho^dag rho)) away from the
/// singular cylinders, blended inside them with the Dirac cone model
/// reconstructed from the markers and the eigenframe of log(rho^dag rho).
HermitianMetric build_parametrix(const MeromorphicPair& pair, DomainPtr dom,
                                 double blend_width);

/// Explicit Euler on log-metric increments h <- h exp(-s * i Lambda F^perp),
/// adaptive step halved on residual increase. K is the central term; the
/// perp projection removes the per-site trace (SUn) or the central average
/// (Un, torus products).
std::pair<HermitianMetric, FlowReport> flow_to_heb(const HermitianMetric& h0,
                                                   const HolomorphicData& holo,
                                                   const Matrix& K, double tol,
                                                   long max_iter,
                                                   const FlowOptions* opts = nullptr);

HypothesisReport hypothesis_report(const HermitianMetric& m,
                                   const HolomorphicData& holo);

/// The flow step field i*(Lambda F - K)^perp and its max norm (diagnostic
/// entry point shared with the flow loop).
std::pair<MatrixField, double> flow_step_field(const HolomorphicData& holo,
                                               const HermitianMetric& m,
                                               const Matrix& K);

} // namespace mono
