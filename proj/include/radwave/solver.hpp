#pragma once
/// Leapfrog (velocity-Verlet) integrator for the radial defocusing wave
/// equation u_tt = Lap u - |u|^{p-1} u on a cell-centered grid.
///
/// Scheme invariants: exact discrete time-reversibility, zero flux through
/// the r = 0 face, homogeneous Dirichlet at r_max kept inert by causal
/// padding of the domain.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "radwave/grid.hpp"
#include "radwave/mathlib.hpp"

namespace radwave {

struct FieldState {
  double t = 0.0;
  Eigen::ArrayXd u;
  Eigen::ArrayXd v;  // u_t at the same time level

  bool finite() const { return u.allFinite() && v.allFinite(); }
};

enum class ProfileKind { gaussian, compact_bump, ring };
enum class VelocityProfile { zero, time_symmetric, outgoing };

/// Radial data profile u0 plus a velocity rule for u1.  The outgoing rule
/// sets u1 = -u0' - ((d-1)/2) u0 / r, which zeroes the inward component.
struct InitialData {
  ProfileKind kind = ProfileKind::compact_bump;
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  VelocityProfile velocity = VelocityProfile::zero;

  double value(double r) const;
  double slope(double r) const;
  /// Radius beyond which the profile is numerically negligible.
  double support_radius() const;
  FieldState discretize(const RadialGrid& grid) const;
};

struct SolverConfig {
  double cfl = 0.8;  // dt = cfl * h, must lie in (0, 1]
  double t_final = 0.0;
  bool nonlinearity_on = true;
};

/// Observes the state at every accepted step, including step 0.
class Recorder {
 public:
  virtual ~Recorder() = default;
  virtual void observe(const FieldState& state, long step) = 0;
};

struct RunReport {
  FieldState final_state;
  long steps = 0;
  double dt = 0.0;
};

/// One leapfrog step of size cfl * h (pure; evolve caches accelerations).
FieldState step(const FieldState& state, const RadialGrid& grid,
                const ModelParams& params, const SolverConfig& config);

RunReport evolve(FieldState initial, const RadialGrid& grid,
                 const ModelParams& params, const SolverConfig& config,
                 std::span<Recorder* const> recorders = {});

RunReport evolve(const InitialData& data, const RadialGrid& grid,
                 const ModelParams& params, const SolverConfig& config,
                 std::span<Recorder* const> recorders = {});

/// Runs the linear flow (nonlinearity off) from state.t to t_target; negative
/// offsets use the exact reversibility of the scheme.  t_target must sit on
/// the step lattice of width cfl * h.
FieldState linear_evolve(const FieldState& state, const RadialGrid& grid,
                         const ModelParams& params, double t_target,
                         double cfl = 0.8);

/// Observed order log2(|o_h - o_h2| / |o_h2 - o_h4|) from a refinement
/// triple; throws when the differences are below roundoff.
double convergence_order(double o_h, double o_h2, double o_h4);

/// r_max needed so the Dirichlet wall stays causally invisible.
double causal_radius(double support_radius, double t_needed);

}  // namespace radwave
