#pragma once
/// Energy functionals: the total conserved energy, its splitting into the
/// inward and outward halves, the Hardy-type identity, and the pointwise
/// densities feeding flux bookkeeping.

#include <Eigen/Dense>

#include "radwave/grid.hpp"
#include "radwave/mathlib.hpp"
#include "radwave/solver.hpp"

namespace radwave {

/// Centered radial derivative with an even-reflection ghost at the origin
/// face and a one-sided stencil at the outer cell.
Eigen::ArrayXd radial_derivative(const Eigen::ArrayXd& u,
                                 const RadialGrid& grid);

/// d/dr u + ((d-1)/2) u/r + sign * v, for sign = +1 or -1.  The +1 branch
/// vanishes on outgoing waves, the -1 branch on ingoing ones.
Eigen::ArrayXd apply_l(const Eigen::ArrayXd& u, const Eigen::ArrayXd& v,
                       const RadialGrid& grid, int sign);
Eigen::ArrayXd apply_l(const FieldState& state, const RadialGrid& grid,
                       int sign);

struct EnergyBreakdown {
  double kinetic = 0.0;          // (1/2) int v^2
  double radial_gradient = 0.0;  // (1/2) int u_r^2
  double potential = 0.0;        // 1/(p+1) int |u|^{p+1}
  double hardy = 0.0;            // (lambda/2) int u^2/r^2
};

struct EnergyReport {
  double t = 0.0;
  double total = 0.0;
  double inward = 0.0;   // E_-
  double outward = 0.0;  // E_+
  EnergyBreakdown components;
};

double total_energy(const FieldState& state, const RadialGrid& grid,
                    const ModelParams& params);

/// Full-space report; total = kinetic + radial_gradient + potential and
/// inward + outward matches it up to quadrature error.
EnergyReport split_energy(const FieldState& state, const RadialGrid& grid,
                          const ModelParams& params);

/// Same restricted to r in [r_lo, r_hi].
EnergyReport split_energy(const FieldState& state, const RadialGrid& grid,
                          const ModelParams& params, double r_lo, double r_hi);

struct HardyIdentity {
  double lhs = 0.0;            // int |Lu|^2 + lambda u^2/r^2
  double rhs = 0.0;            // int u_r^2
  double boundary_term = 0.0;  // signed sphere term at r = R
  double residual = 0.0;       // lhs - rhs - boundary_term
};

struct HardySplit {
  HardyIdentity interior;
  HardyIdentity exterior;
};

/// Full-space identity; requires |u| <= 1e-8 on the outer two cells.
HardyIdentity hardy_identity_residual(const Eigen::ArrayXd& u,
                                      const RadialGrid& grid);

/// Interior/exterior identities split at radius R with the sphere boundary
/// term (+ inside, - outside).
HardySplit hardy_identity_residual(const Eigen::ArrayXd& u,
                                   const RadialGrid& grid, double R);

/// Pointwise densities: the orientation-free flux density e', the bulk
/// Morawetz density M, and the squared split amplitudes.
struct DensityField {
  Eigen::ArrayXd r;
  Eigen::ArrayXd e_prime;
  Eigen::ArrayXd morawetz;
  Eigen::ArrayXd lplus_sq;
  Eigen::ArrayXd lminus_sq;
};

DensityField densities(const FieldState& state, const RadialGrid& grid,
                       const ModelParams& params);

/// int (1 + r^kappa) e(u, v) dx over the full space; kappa in (0, 1].
double weighted_energy(const FieldState& state, const RadialGrid& grid,
                       const ModelParams& params, double kappa);

/// Both sides of the r^kappa-weighted comparison between the split-energy
/// density (lhs) and the plain energy density (rhs); lhs <= rhs up to
/// quadrature error.
std::pair<double, double> kappa_weighted_split_bound(const FieldState& state,
                                                     const RadialGrid& grid,
                                                     const ModelParams& params,
                                                     double kappa);

}  // namespace radwave
