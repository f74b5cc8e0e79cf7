#pragma once

#include "mono/dirac.hpp"
#include "mono/lattice.hpp"

namespace mono {

/// C^2 bump: 1 for R <= r1, 0 for R >= r2, quintic smoothstep between.
double bump_profile(double R, double r1, double r2);

GaugeData flat_field(const GroupSpec& g, DomainPtr dom);

/// A = 0, Higgs = phi (validated skew-Hermitian).
GaugeData constant_higgs_field(const GroupSpec& g, DomainPtr dom, const Matrix& phi);

/// Smooth band-limited random field, deterministic in the seed.
GaugeData random_smooth_field(const GroupSpec& g, DomainPtr dom, uint64_t seed,
                              double amplitude, int max_mode = 3);

/// Constant-curvature clutched background of the given per-direction degrees
/// (Landau gauge; the x-wrap transition lives in clutch_degrees). `wiggle`
/// adds an exact form so the slice integrand is not constant.
GaugeData clutched_field(const GroupSpec& g, DomainPtr dom, const IVec& degrees,
                         double wiggle = 0.0);

struct EmbedOptions {
  IVec base_degrees;     // degree vector of the t=0 slice (torus coordinates)
  double r_plateau = 0;  // exact-model zone; default max(eps, 2h)
  double r_cut = 0;      // bump support; default 2.5 * r_plateau
  Matrix twist;          // optional constant skew-Hermitian Higgs offset
  bool require_balanced = true; // sum of charges must vanish
};

/// Abelian Dirac-embedded test field: clutched background whose degree vector
/// steps by <mu_j> across each t_j, plus bump-cut exact Dirac patch fields
/// around every singularity (patch chosen per side of t_j, so no strings).
GaugeData dirac_embedded_field(const GroupSpec& g, DomainPtr dom,
                               const EmbedOptions& opt);

/// SU(2) hedgehog embedding of the single mu = (1,-1) singularity of the
/// domain (bump-cut Wu-Yang field), plus an optional constant diagonal twist.
GaugeData wu_yang_embedded_field(DomainPtr dom, double r_plateau, double r_cut,
                                 const Matrix& twist);

/// Exact Dirac patch field sampled relative to singularity j (no cutoff, no
/// background); meaningful on sites left unmasked by the caller.
GaugeData exact_dirac_sample_field(const GroupSpec& g, DomainPtr dom, int j,
                                   Patch patch);

struct AsymptoticsReport {
  double max_higgs_dev = 0.0;   // sup over annulus of || eig(i R Phi) - k/2 ||
  double max_grad_bound = 0.0;  // sup over annulus of || grad(R Phi) ||
  int annulus_sites = 0;
};

/// Check the Dirac-type asymptotics of a field on the matching annulus
/// eps/2 < R < eps around singularity j (gauge-invariant quantities only).
AsymptoticsReport check_dirac_asymptotics(const GaugeData& f, int j);

} // namespace mono
