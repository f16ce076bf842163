#pragma once
/// Space-time estimates derived from run traces: the R-truncated Morawetz
/// inequality, the unweighted global bulk integrals it controls, weighted
/// bulk bounds with admissible weights, decay-rate fits of the inward
/// energy, and the L^{1/kappa} averaging lemma on measure densities.

#include <span>
#include <vector>

#include "radwave/diagnostics.hpp"
#include "radwave/weights.hpp"

namespace radwave {

struct MorawetzReport {
  double radius = 0.0;
  double interior_term = 0.0;  // (1/2R) * interior bulk
  double sphere_term = 0.0;    // ((d-1)/4R^2) * sphere mass
  double exterior_term = 0.0;
  double total = 0.0;
  double bound = 0.0;  // 2 E
};

/// Truncated-horizon Morawetz combination for a registered radius R;
/// horizon defaults to the full run.
MorawetzReport morawetz_inequality(const RunDiagnostics& diag, double R,
                                   double horizon = -1.0);

struct GlobalBulkIntegrals {
  double bulk = 0.0;      // full-space weighted bulk, compared to E
  double interior = 0.0;  // plain interior energy mass, compared to R E
  double sphere = 0.0;    // sphere mass, compared to R^2 E
  double bulk_ratio = 0.0;
  double interior_ratio = 0.0;
  double sphere_ratio = 0.0;
};

GlobalBulkIntegrals unweighted_global_integrals(const RunDiagnostics& diag,
                                               double R);

struct WeightedMorawetz {
  double lhs = 0.0;          // weighted space-time bulk integral
  double mu_weighted = 0.0;  // int a(t) dmu(t)
  double k1 = 0.0;           // weighted inward part of the initial data
};

WeightedMorawetz weighted_morawetz(const RunDiagnostics& diag,
                                   const WeightSpec& weight);

struct DecayFit {
  double kappa_target = 0.0;
  double fitted_slope = 0.0;
  double fit_residual = 0.0;       // rms residual of the log-log fit
  double bound_constant = 0.0;     // sup_t E_-(t) t^kappa / E_kappa
  double truncated_norm = 0.0;     // L^{1/kappa} norm of E_- over [0, t_hi]
  bool dropped_nonpositive = false;
};

/// Fits log E_- against log t on [t_hi/8, t_hi] where t_hi is the last time
/// in the window (capped by truncate_at when positive).
DecayFit decay_fit(std::span<const double> times,
                   std::span<const double> inward, double kappa,
                   double e_kappa, double truncate_at = -1.0);

DecayFit decay_fit(const RunDiagnostics& diag, double kappa, double e_kappa,
                   double truncate_at = -1.0);

struct LPowerCheck {
  double f_norm = 0.0;  // || int_x^inf y^-kappa dmu ||_{L^{1/kappa}}
  double mass = 0.0;    // mu(R+)
};

/// Exact panel-wise evaluation for a piecewise-linear density on [ys].
LPowerCheck l_power_lemma_check(std::span<const double> ys,
                                std::span<const double> density, double kappa);

}  // namespace radwave
