#pragma once
/// Scattering-side diagnostics: space-time Strichartz norms of a run, free
/// profiles pulled back from late-time snapshots, and the exponent
/// bookkeeping of the decay-to-scattering interpolation.

#include "radwave/diagnostics.hpp"
#include "radwave/mathlib.hpp"
#include "radwave/solver.hpp"

namespace radwave {

/// ||u||_{L^q_t L^r_x} over [t_a, t_b].  The spatial exponent must be among
/// the run's recorded norm exponents; q = infinite_exponent takes the
/// supremum of the spatial norm over the window.
double spacetime_norm(const RunDiagnostics& diag, double q, double r,
                      double t_a, double t_b);

/// Diagonal pair q = r = (d+1)(p-1)/2 that controls the nonlinear term.
StrichartzPair s_pair(int d, double p);

/// Diagonal pair q = r = 2(d+1)/(d-1) at regularity 1/2.
StrichartzPair w_pair(int d);

/// Energy inside the ball {r < speed * t} on the stride lattice.  The speed
/// must be among the run's recorded interior speeds.
const ScalarSeries& interior_energy_series(const RunDiagnostics& diag,
                                           double speed);

/// sqrt(omega int (u_r^2 + v^2) r^{d-1} dr), the free-field size of a state.
double free_energy_norm(const FieldState& state, const RadialGrid& grid);

/// A free wave matched to the run at one late time: the snapshot at t = T
/// evolved linearly back to t = 0.
struct ScatterProfile {
  double T = 0.0;
  FieldState state;          // free data at t = 0
  double energy_norm = 0.0;  // free_energy_norm of that data
};

/// Pulls the snapshot taken at T and runs the linear flow back to t = 0.
/// The snapshot support must stay inside the grid for the whole pull-back,
/// otherwise the free evolution is contaminated by the wall.
ScatterProfile extract_profile(const RunDiagnostics& diag, double T);

/// Free-field distance between the profiles extracted at t1 and t2.  A run
/// that scatters makes this a Cauchy tail: the defect falls as the times
/// grow.
double scatter_defect(const RunDiagnostics& diag, double t1, double t2);

/// Exponents of the two-factor Hoelder split of |u|^{p-1} u used to close
/// the scattering argument from the weighted decay of the inward energy.
struct InterconstantSet {
  double kappa0 = 0.0;
  double q1 = 0.0, r1 = 0.0;  // decay-weighted endpoint, q1 = (p+1)/kappa0
  double q2 = 0.0, r2 = 0.0;  // energy endpoint (2, 2d/(d-3))
  double k1 = 0.0, k2 = 0.0;  // Hoelder shares, k1 + k2 = p - 1
  double share_residual = 0.0;    // |k1 + k2 - (p - 1)|
  double scaling_residual = 0.0;  // |k1/q1 + k2/q2 - 2/(d+1)|
  bool shares_positive = false;
  bool endpoint_admissible = false;  // (q2, r2) at regularity one
};

/// Computes the interpolation exponents for 4 <= d <= 8 and conformal <
/// p < energy-critical, together with the residuals of the two identities
/// they must satisfy.
InterconstantSet check_interconstants(int d, double p);

}  // namespace radwave
