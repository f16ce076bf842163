#include "radwave/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace radwave {

namespace {

Eigen::ArrayXd abs_power(const Eigen::ArrayXd& u, double q) {
  if (q == 4.0) return (u * u).square();
  if (q == 3.0) return u.abs() * u * u;
  if (q == 6.0) return (u * u).cube();
  return u.abs().pow(q);
}

void require_decayed_tail(const Eigen::ArrayXd& u) {
  const auto n = u.size();
  if (std::max(std::abs(u(n - 1)), std::abs(u(n - 2))) > 1e-8)
    throw std::invalid_argument(
        "hardy_identity_residual: field has not decayed at the outer cells");
}

}  // namespace

Eigen::ArrayXd radial_derivative(const Eigen::ArrayXd& u,
                                 const RadialGrid& grid) {
  const auto n = grid.n;
  if (u.size() != n)
    throw std::invalid_argument("radial_derivative: size mismatch");
  Eigen::ArrayXd out(n);
  out(0) = (u(1) - u(0)) / (2.0 * grid.h);  // even ghost across r = 0
  out.segment(1, n - 2) = (u.tail(n - 2) - u.head(n - 2)) / (2.0 * grid.h);
  out(n - 1) = (u(n - 1) - u(n - 2)) / grid.h;
  return out;
}

Eigen::ArrayXd apply_l(const Eigen::ArrayXd& u, const Eigen::ArrayXd& v,
                       const RadialGrid& grid, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("apply_l: sign must be +1 or -1");
  if (v.size() != grid.n) throw std::invalid_argument("apply_l: size mismatch");
  const double half = 0.5 * (grid.d - 1.0);
  return radial_derivative(u, grid) + half * u / grid.centers() +
         static_cast<double>(sign) * v;
}

Eigen::ArrayXd apply_l(const FieldState& state, const RadialGrid& grid,
                       int sign) {
  return apply_l(state.u, state.v, grid, sign);
}

double total_energy(const FieldState& state, const RadialGrid& grid,
                    const ModelParams& params) {
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const double p = params.p();
  return radial_integral(
      (0.5 * (dudr.square() + state.v.square()) +
       abs_power(state.u, p + 1.0) / (p + 1.0))
          .eval(),
      w);
}

namespace {

EnergyReport split_energy_impl(const FieldState& state, const RadialGrid& grid,
                               const ModelParams& params, bool clipped,
                               double r_lo, double r_hi) {
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd r = grid.centers();
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const double p = params.p();
  const double lambda = hardy_coefficient(grid.d);
  const double half = 0.5 * (grid.d - 1.0);

  const Eigen::ArrayXd lu = dudr + half * state.u / r;
  const Eigen::ArrayXd lplus_sq = (lu + state.v).square();
  const Eigen::ArrayXd lminus_sq = (lu - state.v).square();
  const Eigen::ArrayXd hardy_den = lambda * (state.u / r).square();
  const Eigen::ArrayXd pot = abs_power(state.u, p + 1.0);

  auto integrate = [&](const Eigen::ArrayXd& values) {
    return clipped ? clipped_integral(values, w, grid, r_lo, r_hi)
                   : radial_integral(values, w);
  };

  EnergyReport rep;
  rep.t = state.t;
  rep.components.kinetic = integrate((0.5 * state.v.square()).eval());
  rep.components.radial_gradient = integrate((0.5 * dudr.square()).eval());
  rep.components.potential = integrate((pot / (p + 1.0)).eval());
  rep.components.hardy = integrate((0.5 * hardy_den).eval());
  rep.total = rep.components.kinetic + rep.components.radial_gradient +
              rep.components.potential;
  rep.inward = integrate(
      (0.25 * (lplus_sq + hardy_den) + pot / (2.0 * (p + 1.0))).eval());
  rep.outward = integrate(
      (0.25 * (lminus_sq + hardy_den) + pot / (2.0 * (p + 1.0))).eval());
  return rep;
}

}  // namespace

EnergyReport split_energy(const FieldState& state, const RadialGrid& grid,
                          const ModelParams& params) {
  return split_energy_impl(state, grid, params, false, 0.0, 0.0);
}

EnergyReport split_energy(const FieldState& state, const RadialGrid& grid,
                          const ModelParams& params, double r_lo, double r_hi) {
  if (!(r_hi >= r_lo))
    throw std::invalid_argument("split_energy: empty radial interval");
  return split_energy_impl(state, grid, params, true, r_lo, r_hi);
}

HardyIdentity hardy_identity_residual(const Eigen::ArrayXd& u,
                                      const RadialGrid& grid) {
  require_decayed_tail(u);
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd r = grid.centers();
  const Eigen::ArrayXd dudr = radial_derivative(u, grid);
  const double lambda = hardy_coefficient(grid.d);
  const double half = 0.5 * (grid.d - 1.0);
  const Eigen::ArrayXd lu = dudr + half * u / r;

  HardyIdentity out;
  out.lhs = radial_integral((lu.square() + lambda * (u / r).square()).eval(), w);
  out.rhs = radial_integral(dudr.square().eval(), w);
  out.boundary_term = 0.0;
  out.residual = out.lhs - out.rhs;
  return out;
}

HardySplit hardy_identity_residual(const Eigen::ArrayXd& u,
                                   const RadialGrid& grid, double R) {
  require_decayed_tail(u);
  if (!(R > 0.0 && R < grid.r_max()))
    throw std::domain_error("hardy_identity_residual: R outside the grid");
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd r = grid.centers();
  const Eigen::ArrayXd dudr = radial_derivative(u, grid);
  const double lambda = hardy_coefficient(grid.d);
  const double half = 0.5 * (grid.d - 1.0);
  const Eigen::ArrayXd lu_sq =
      (dudr + half * u / r).square() + lambda * (u / r).square();
  const Eigen::ArrayXd dudr_sq = dudr.square();

  const double u_at_R = sample_linear(u, grid, R);
  const double sphere = sphere_area(grid.d) * std::pow(R, grid.d - 1) *
                        u_at_R * u_at_R;
  const double boundary = (grid.d - 1.0) / (2.0 * R) * sphere;

  HardySplit out;
  out.interior.lhs = clipped_integral(lu_sq, w, grid, 0.0, R);
  out.interior.rhs = clipped_integral(dudr_sq, w, grid, 0.0, R);
  out.interior.boundary_term = boundary;
  out.interior.residual =
      out.interior.lhs - out.interior.rhs - out.interior.boundary_term;

  out.exterior.lhs = clipped_integral(lu_sq, w, grid, R, grid.r_max());
  out.exterior.rhs = clipped_integral(dudr_sq, w, grid, R, grid.r_max());
  out.exterior.boundary_term = -boundary;
  out.exterior.residual =
      out.exterior.lhs - out.exterior.rhs - out.exterior.boundary_term;
  return out;
}

DensityField densities(const FieldState& state, const RadialGrid& grid,
                       const ModelParams& params) {
  DensityField out;
  out.r = grid.centers();
  const double p = params.p();
  const double d = grid.d;
  const double lambda = hardy_coefficient(grid.d);
  const double half = 0.5 * (d - 1.0);
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const Eigen::ArrayXd lu = dudr + half * state.u / out.r;
  const Eigen::ArrayXd pot = abs_power(state.u, p + 1.0);
  const Eigen::ArrayXd hardy_den = lambda * (state.u / out.r).square();

  out.lplus_sq = (lu + state.v).square();
  out.lminus_sq = (lu - state.v).square();
  out.e_prime = 0.5 * hardy_den + pot / (p + 1.0);
  out.morawetz = (0.5 * hardy_den +
                  (d - 1.0) * (p - 1.0) / (4.0 * (p + 1.0)) * pot) /
                 out.r;
  return out;
}

double weighted_energy(const FieldState& state, const RadialGrid& grid,
                       const ModelParams& params, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::domain_error("weighted_energy: kappa must lie in (0, 1]");
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const double p = params.p();
  const Eigen::ArrayXd density = 0.5 * (dudr.square() + state.v.square()) +
                                 abs_power(state.u, p + 1.0) / (p + 1.0);
  return radial_integral(
      ((1.0 + grid.centers().pow(kappa)) * density).eval(), w);
}

std::pair<double, double> kappa_weighted_split_bound(const FieldState& state,
                                                     const RadialGrid& grid,
                                                     const ModelParams& params,
                                                     double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::domain_error(
        "kappa_weighted_split_bound: kappa must lie in (0, 1]");
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd r = grid.centers();
  const Eigen::ArrayXd rk = r.pow(kappa);
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const double p = params.p();
  const double lambda = hardy_coefficient(grid.d);
  const double half = 0.5 * (grid.d - 1.0);
  const Eigen::ArrayXd lu = dudr + half * state.u / r;
  const Eigen::ArrayXd pot = abs_power(state.u, p + 1.0);

  const double lhs = radial_integral(
      (rk * (0.25 * ((lu + state.v).square() + (lu - state.v).square()) +
             0.5 * lambda * (state.u / r).square() + pot / (p + 1.0)))
          .eval(),
      w);
  const double rhs = radial_integral(
      (rk * (0.5 * (dudr.square() + state.v.square()) + pot / (p + 1.0)))
          .eval(),
      w);
  return {lhs, rhs};
}

}  // namespace radwave
