#pragma once
/// Flux bookkeeping over space-time regions, assembled from traces captured
/// by RunDiagnostics.  Sign conventions follow the outward normal of the
/// counterclockwise boundary: the inward-energy ledger balances against
/// -(bulk integral), the outward one against +(bulk integral), and an axis
/// edge contributes -+ c_d mu([t1, t2]).

#include <string>
#include <vector>

#include "radwave/diagnostics.hpp"

namespace radwave {

enum class EnergyType { inward, outward };

const char* to_string(EnergyType type);

struct FluxLedger {
  std::string region_id;
  EnergyType type = EnergyType::inward;
  /// Signed boundary integrals per segment; axis entries are zero here and
  /// carried in mu_term instead.
  std::vector<std::pair<SurfaceSegment, double>> per_segment;
  double mu_term = 0.0;
  double morawetz_integral = 0.0;
  double residual = 0.0;  // sum(per_segment) + mu_term +- morawetz_integral
};

struct ConeFluxSeries {
  struct Entry {
    bool forward = false;
    double offset = 0.0;  // tau for forward cones, s for backward ones
    bool intersects = false;
    double q_inward = 0.0;
    double q_outward = 0.0;
  };
  std::vector<Entry> entries;
  double energy = 0.0;  // initial total energy of the run
};

/// Origin measure mu([t_lo, t_hi]) integrated from the squared origin
/// amplitude; exact interval additivity.  Throws std::domain_error when the
/// interval leaves the recorded span.
double mu_accumulate(const RunDiagnostics& diag, double t_lo, double t_hi);

/// Signed boundary integral of one traced segment.  Axis segments come from
/// the origin measure; everything else must have been registered with the
/// run's diagnostics, otherwise std::invalid_argument names the segment.
double surface_integral(const SurfaceSegment& segment,
                        const RunDiagnostics& diag, EnergyType type);

/// Space-time integral of the bulk Morawetz density over a registered
/// region.
double morawetz_region_integral(const Region& region,
                                const RunDiagnostics& diag);

/// Same over the full slab [t_lo, t_hi] x R^d (needs global_morawetz).
double global_morawetz_integral(const RunDiagnostics& diag, double t_lo,
                                double t_hi);

/// Full-space integral of lambda u^2/r^3 + |u|^{p+1}/r over [t_lo, t_hi].
double global_bulk_integral(const RunDiagnostics& diag, double t_lo,
                            double t_hi);

/// Assembles the closed-loop ledger of a registered region.
FluxLedger flux_balance(const Region& region, const RunDiagnostics& diag,
                        EnergyType type);

/// Truncated cone fluxes Q_- and Q_+ for every registered cone.
ConeFluxSeries cone_fluxes(const RunDiagnostics& diag);

}  // namespace radwave
