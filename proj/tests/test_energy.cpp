// Energy functional checks: the directional splitting, the Hardy-type
// identity behind it, pointwise flux densities and the weighted energies.
// Discretization errors are second order; the tolerances and refinement
// ratios below pin that down.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "radwave/energy.hpp"
#include "radwave/grid.hpp"
#include "radwave/mathlib.hpp"
#include "radwave/solver.hpp"

using namespace radwave;

namespace {

// Outgoing pulse u = g(r)/r, v = -g'(r)/r in d = 3; L+ u vanishes
// identically, L- u = 2g'/r.
FieldState outgoing_pulse(const RadialGrid& grid) {
  FieldState state;
  state.t = 0.0;
  state.u.resize(grid.n);
  state.v.resize(grid.n);
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    const double r = grid.center(j);
    const double s = r - 6.0;
    const double g = std::exp(-s * s);
    state.u(j) = g / r;
    state.v(j) = 2.0 * s * g / r;  // -g'(r)/r
  }
  return state;
}

FieldState bump_state(const RadialGrid& grid, VelocityProfile vel) {
  InitialData data{ProfileKind::compact_bump, 1.0, 0.0, 2.0, vel};
  return data.discretize(grid);
}

}  // namespace

TEST_CASE("the inward operator annihilates outgoing pulses") {
  const Eigen::Index n = 4096;
  RadialGrid grid{3, 16.0 / static_cast<double>(n), n};
  const FieldState state = outgoing_pulse(grid);
  const Eigen::ArrayXd inward = apply_l(state, grid, +1);
  const Eigen::ArrayXd outward = apply_l(state, grid, -1);
  CHECK(inward.abs().maxCoeff() < 2e-4 * outward.abs().maxCoeff());
  CHECK_THROWS_AS(apply_l(state, grid, 0), std::invalid_argument);
}

TEST_CASE("time-symmetric data splits evenly") {
  const Eigen::Index n = 1024;
  for (int d : {3, 5}) {
    CAPTURE(d);
    RadialGrid grid{d, 8.0 / static_cast<double>(n), n};
    const auto params = ModelParams::checked(d, d == 3 ? 3.0 : 2.2);
    const auto rep =
        split_energy(bump_state(grid, VelocityProfile::zero), grid, params);
    CHECK(rep.inward == rep.outward);  // v = 0 makes the halves identical
    CHECK(rep.total > 0.0);
  }
}

TEST_CASE("inward plus outward recovers the total at second order") {
  const auto residual = [](Eigen::Index n) {
    RadialGrid grid{5, 16.0 / static_cast<double>(n), n};
    const auto params = ModelParams::checked(5, 2.2);
    const auto rep =
        split_energy(bump_state(grid, VelocityProfile::outgoing), grid, params);
    return std::abs(rep.inward + rep.outward - rep.total) / rep.total;
  };
  const double coarse = residual(2048);
  const double fine = residual(4096);
  CHECK(fine < 1e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("energy components match the direct quadratures") {
  const Eigen::Index n = 1024;
  RadialGrid grid{4, 8.0 / static_cast<double>(n), n};
  const auto params = ModelParams::checked(4, 2.5);
  const FieldState state = bump_state(grid, VelocityProfile::outgoing);

  const auto rep = split_energy(state, grid, params);
  const Eigen::ArrayXd dudr = radial_derivative(state.u, grid);
  const double kinetic = radial_integral((0.5 * state.v.square()).eval(), grid);
  const double gradient = radial_integral((0.5 * dudr.square()).eval(), grid);
  const double pot = radial_integral(
      (state.u.abs().pow(3.5) / 3.5).eval(), grid);
  CHECK(rep.components.kinetic == doctest::Approx(kinetic).epsilon(1e-13));
  CHECK(rep.components.radial_gradient ==
        doctest::Approx(gradient).epsilon(1e-13));
  CHECK(rep.components.potential == doctest::Approx(pot).epsilon(1e-12));
  CHECK(rep.total ==
        doctest::Approx(kinetic + gradient + pot).epsilon(1e-13));
  CHECK(total_energy(state, grid, params) ==
        doctest::Approx(rep.total).epsilon(1e-13));
}

TEST_CASE("restricted split reports add up over a partition") {
  const Eigen::Index n = 1024;
  RadialGrid grid{5, 8.0 / static_cast<double>(n), n};
  const auto params = ModelParams::checked(5, 2.2);
  const FieldState state = bump_state(grid, VelocityProfile::outgoing);

  const auto whole = split_energy(state, grid, params);
  const auto left = split_energy(state, grid, params, 0.0, 1.37);
  const auto right = split_energy(state, grid, params, 1.37, grid.r_max());
  CHECK(left.inward + right.inward ==
        doctest::Approx(whole.inward).epsilon(1e-12));
  CHECK(left.outward + right.outward ==
        doctest::Approx(whole.outward).epsilon(1e-12));
  CHECK(left.total + right.total ==
        doctest::Approx(whole.total).epsilon(1e-12));
  CHECK_THROWS_AS(split_energy(state, grid, params, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("hardy identity holds at second order") {
  const auto residual = [](Eigen::Index n) {
    RadialGrid grid{5, 8.0 / static_cast<double>(n), n};
    InitialData data{ProfileKind::compact_bump, 1.0, 0.0, 2.0,
                     VelocityProfile::zero};
    const auto id = hardy_identity_residual(data.discretize(grid).u, grid);
    return std::abs(id.residual) / id.rhs;
  };
  const double coarse = residual(1024);
  const double fine = residual(2048);
  CHECK(fine < 1e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("hardy identity rejects undecayed tails") {
  RadialGrid grid{5, 0.05, 256};
  Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(256);
  CHECK_THROWS_AS(hardy_identity_residual(ones, grid), std::invalid_argument);
}

TEST_CASE("split hardy identity balances across the interface") {
  const Eigen::Index n = 2048;
  RadialGrid grid{5, 8.0 / static_cast<double>(n), n};
  InitialData data{ProfileKind::compact_bump, 1.0, 0.0, 2.0,
                   VelocityProfile::zero};
  const Eigen::ArrayXd u = data.discretize(grid).u;

  const auto full = hardy_identity_residual(u, grid);
  const auto split = hardy_identity_residual(u, grid, 1.3);
  CHECK(split.interior.lhs + split.exterior.lhs ==
        doctest::Approx(full.lhs).epsilon(1e-12));
  CHECK(split.interior.boundary_term ==
        doctest::Approx(-split.exterior.boundary_term).epsilon(1e-12));
  CHECK(std::abs(split.interior.residual) < 1e-3 * full.rhs);
  CHECK(std::abs(split.exterior.residual) < 1e-3 * full.rhs);
  CHECK_THROWS_AS(hardy_identity_residual(u, grid, 100.0), std::domain_error);
}

TEST_CASE("flux density ratios at unit amplitude") {
  // With u = 1, v = 0 and d = 3 both densities are pure potential terms;
  // r M / e' equals 1 at p = 3 and 3/2 at p = 4.
  RadialGrid grid{3, 0.05, 128};
  FieldState state;
  state.t = 0.0;
  state.u = Eigen::ArrayXd::Ones(128);
  state.v = Eigen::ArrayXd::Zero(128);

  const auto d3 = densities(state, grid, ModelParams::checked(3, 3.0));
  const auto d4 = densities(state, grid, ModelParams::checked(3, 4.0));
  const Eigen::Index j = 64;
  const double r = grid.center(j);
  CHECK(r * d3.morawetz(j) / d3.e_prime(j) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r * d4.morawetz(j) / d4.e_prime(j) ==
        doctest::Approx(1.5).epsilon(1e-12));
  // Gradient-free field: e' carries no kinetic part, only |u|^{p+1}/(p+1).
  CHECK(d3.e_prime(j) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("weighted energy brackets") {
  const Eigen::Index n = 2048;
  RadialGrid grid{4, 8.0 / static_cast<double>(n), n};
  const auto params = ModelParams::checked(4, 2.5);
  const FieldState state = bump_state(grid, VelocityProfile::outgoing);
  const double e = total_energy(state, grid, params);

  // Support sits in r <= 2, so 1 <= 1 + r^kappa <= 1 + 2^kappa there.
  const double ek = weighted_energy(state, grid, params, 0.5);
  CHECK(ek > e);
  CHECK(ek < (1.0 + std::pow(2.0, 0.5)) * e);

  // kappa -> 0 limit approaches 2E.
  const double e0 = weighted_energy(state, grid, params, 1e-9);
  CHECK(e0 == doctest::Approx(2.0 * e).epsilon(1e-6));

  CHECK_THROWS_AS(weighted_energy(state, grid, params, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(weighted_energy(state, grid, params, 1.5),
                  std::domain_error);
}

TEST_CASE("weighted split density is dominated by the weighted energy") {
  const Eigen::Index n = 2048;
  for (int d : {3, 5}) {
    CAPTURE(d);
    RadialGrid grid{d, 8.0 / static_cast<double>(n), n};
    const auto params = ModelParams::checked(d, d == 3 ? 3.0 : 2.2);
    const FieldState state = bump_state(grid, VelocityProfile::outgoing);
    for (double kappa : {0.3, 0.7, 1.0}) {
      CAPTURE(kappa);
      const auto [lhs, rhs] =
          kappa_weighted_split_bound(state, grid, params, kappa);
      CHECK(lhs > 0.0);
      CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("energy drift along a nonlinear run vanishes at second order") {
  const auto params = ModelParams::checked(5, 2.2);
  InitialData data{ProfileKind::compact_bump, 1.0, 0.0, 2.0,
                   VelocityProfile::zero};
  SolverConfig solver{0.8, 4.0, true};
  auto drift = [&](Eigen::Index n) {
    RadialGrid grid{5, 12.0 / static_cast<double>(n), n};
    const FieldState start = data.discretize(grid);
    const double e0 = total_energy(start, grid, params);
    const auto report = evolve(start, grid, params, solver);
    const double e1 = total_energy(report.final_state, grid, params);
    return std::abs(e1 - e0) / e0;
  };
  const double coarse = drift(512);
  const double fine = drift(1024);
  CHECK(fine < 5e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}
