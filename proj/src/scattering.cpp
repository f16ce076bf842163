#include "radwave/scattering.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "radwave/energy.hpp"

namespace radwave {

double spacetime_norm(const RunDiagnostics& diag, double q, double r,
                      double t_a, double t_b) {
  if (!(r >= 1.0)) throw std::domain_error("spacetime_norm: need r >= 1");
  if (!(q >= 1.0)) throw std::domain_error("spacetime_norm: need q >= 1");
  const NormTrace* found = nullptr;
  for (const NormTrace& trace : diag.norm_traces())
    if (std::abs(trace.exponent - r) <= 1e-12) {
      found = &trace;
      break;
    }
  if (found == nullptr) {
    std::ostringstream msg;
    msg << "spatial exponent " << r
        << " was not registered with the run diagnostics";
    throw std::invalid_argument(msg.str());
  }

  if (q == infinite_exponent)
    return std::pow(max_series(found->series, t_a, t_b), 1.0 / r);

  ScalarSeries powered;
  powered.t = found->series.t;
  powered.value.reserve(found->series.value.size());
  for (double a : found->series.value)
    powered.value.push_back(std::pow(a, q / r));
  return std::pow(integrate_series(powered, t_a, t_b), 1.0 / q);
}

StrichartzPair s_pair(int d, double p) {
  StrichartzPair pair;
  pair.q = pair.r = 0.5 * (d + 1.0) * (p - 1.0);
  pair.s = critical_regularity(d, p);
  pair.rho = 0.0;
  return pair;
}

StrichartzPair w_pair(int d) {
  StrichartzPair pair;
  pair.q = pair.r = 2.0 * (d + 1.0) / (d - 1.0);
  pair.s = 0.5;
  pair.rho = 0.0;
  return pair;
}

const ScalarSeries& interior_energy_series(const RunDiagnostics& diag,
                                           double speed) {
  for (const InteriorTrace& trace : diag.interior_traces())
    if (std::abs(trace.speed - speed) <= 1e-12) return trace.series;
  throw std::invalid_argument(
      "interior speed was not registered with the run diagnostics");
}

double free_energy_norm(const FieldState& state, const RadialGrid& grid) {
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  return std::sqrt(radial_integral((dudr.square() + state.v.square()).eval(),
                                   quadrature_weights(grid)));
}

namespace {

double support_edge(const FieldState& state, const RadialGrid& grid) {
  const double peak =
      std::max(state.u.abs().maxCoeff(), state.v.abs().maxCoeff());
  if (peak == 0.0) return 0.0;
  const double threshold = 1e-10 * peak;
  for (Eigen::Index j = grid.n; j-- > 0;)
    if (std::abs(state.u(j)) > threshold || std::abs(state.v(j)) > threshold)
      return grid.center(j) + 0.5 * grid.h;
  return 0.0;
}

}  // namespace

ScatterProfile extract_profile(const RunDiagnostics& diag, double T) {
  const Snapshot* snap = nullptr;
  for (const Snapshot& s : diag.snapshots())
    if (std::abs(s.requested_t - T) <= 1e-9 * std::max(1.0, std::abs(T))) {
      snap = &s;
      break;
    }
  if (snap == nullptr) {
    std::ostringstream msg;
    msg << "no snapshot was taken at t = " << T;
    throw std::invalid_argument(msg.str());
  }

  const RadialGrid& grid = diag.grid();
  const double support = support_edge(snap->state, grid);
  if (support + std::abs(T - 0.0) > grid.r_max() + 1e-9) {
    std::ostringstream msg;
    msg << "snapshot support " << support << " at t = " << T
        << " reaches the wall during the pull-back (r_max = " << grid.r_max()
        << ")";
    throw std::domain_error(msg.str());
  }

  ScatterProfile profile;
  profile.T = T;
  profile.state =
      linear_evolve(snap->state, grid, diag.params(), 0.0, diag.cfl());
  profile.energy_norm = free_energy_norm(profile.state, grid);
  return profile;
}

double scatter_defect(const RunDiagnostics& diag, double t1, double t2) {
  const ScatterProfile a = extract_profile(diag, t1);
  const ScatterProfile b = extract_profile(diag, t2);
  FieldState diff;
  diff.t = 0.0;
  diff.u = a.state.u - b.state.u;
  diff.v = a.state.v - b.state.v;
  return free_energy_norm(diff, diag.grid());
}

InterconstantSet check_interconstants(int d, double p) {
  if (d < 4 || d > 8)
    throw std::domain_error("check_interconstants: need 4 <= d <= 8");
  const CriticalExponents crit = critical_exponents(d);
  if (!(p > crit.conformal && p < crit.energy_critical))
    throw std::domain_error(
        "check_interconstants: p must lie strictly between the conformal "
        "and energy-critical exponents");

  InterconstantSet out;
  out.kappa0 = minimal_decay_rate(d, p);
  out.q1 = (p + 1.0) / out.kappa0;
  out.r1 = p + 1.0;
  out.q2 = 2.0;
  out.r2 = 2.0 * d / (d - 3.0);

  const double denom = 2.0 * d / (p + 1.0) - (d - 3.0);
  out.k1 = (4.0 * d / (d + 1.0) - (d - 3.0) * (p - 1.0)) / denom;
  out.k2 = (-4.0 * d / (d + 1.0) + 2.0 * d * (p - 1.0) / (p + 1.0)) / denom;

  out.share_residual = std::abs(out.k1 + out.k2 - (p - 1.0));
  // k1/q1 written as k1 kappa0 / (p+1) keeps the identity exact when
  // kappa0 itself carries the rounding.
  out.scaling_residual = std::abs(out.k1 * out.kappa0 / (p + 1.0) +
                                  out.k2 / 2.0 - 2.0 / (d + 1.0));
  out.shares_positive = out.k1 > 0.0 && out.k2 > 0.0;

  StrichartzPair endpoint;
  endpoint.q = out.q2;
  endpoint.r = out.r2;
  endpoint.s = 1.0;
  endpoint.rho = 0.0;
  out.endpoint_admissible = is_admissible(endpoint, d);
  return out;
}

}  // namespace radwave
