// Space-time estimate checks: admissible-weight validation, the truncated
// Morawetz inequality on an evolved run, weighted bulk bounds, decay-rate
// fits on synthetic power laws, and the L^{1/kappa} averaging lemma with
// its exact uniform-density value and its point-mass sharpness.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "radwave/diagnostics.hpp"
#include "radwave/energy.hpp"
#include "radwave/estimates.hpp"
#include "radwave/flux.hpp"
#include "radwave/solver.hpp"
#include "radwave/weights.hpp"

using namespace radwave;

TEST_CASE("weight specs validate growth and monotonicity") {
  CHECK_NOTHROW(WeightSpec::power(0.5).validate());
  CHECK_NOTHROW(WeightSpec::power(1.0).validate());
  CHECK_THROWS_AS(WeightSpec::power(1.2).validate(), std::domain_error);
  CHECK_THROWS_AS(WeightSpec::power(0.0).validate(), std::domain_error);

  const auto table = WeightSpec::table({0.0, 1.0, 4.0}, {1.0, 1.5, 2.0}, 1.0);
  CHECK_NOTHROW(table.validate());
  CHECK(table(0.5) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(table(2.5) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(table(10.0) == doctest::Approx(2.0).epsilon(1e-14));  // flat beyond

  // Decreasing values.
  CHECK_THROWS_AS(WeightSpec::table({0.0, 1.0}, {2.0, 1.0}, 1.0).validate(),
                  std::domain_error);
  // Growth faster than gamma a(r)/r.
  CHECK_THROWS_AS(WeightSpec::table({1.0, 1.1}, {1.0, 3.0}, 1.0).validate(),
                  std::domain_error);
  // Malformed sample sets.
  CHECK_THROWS_AS(WeightSpec::table({1.0}, {1.0}, 1.0).validate(),
                  std::domain_error);
  CHECK_THROWS_AS(WeightSpec::table({1.0, 0.5}, {1.0, 1.0}, 1.0).validate(),
                  std::domain_error);

  CHECK(WeightSpec::power(0.5).same_as(WeightSpec::power(0.5)));
  CHECK_FALSE(WeightSpec::power(0.5).same_as(WeightSpec::power(0.6)));
  CHECK_FALSE(table.same_as(WeightSpec::power(0.5)));
  CHECK(WeightSpec::power(0.5)(4.0) == doctest::Approx(2.0).epsilon(1e-14));
}

namespace {

struct EstimateRun {
  RadialGrid grid{3, 12.0 / 1024.0, 1024};
  ModelParams params = ModelParams::checked(3, 3.0);
  SolverConfig solver{0.8, 4.0, true};
  WeightSpec flat = WeightSpec::table({0.0, 1.0}, {1.0, 1.0}, 0.5);
  WeightSpec flat_conformal = WeightSpec::table({0.0, 1.0}, {1.0, 1.0}, 1.0);
  WeightSpec half = WeightSpec::power(0.5);
  RunDiagnostics diag;

  EstimateRun() : diag(grid, params, solver, make_config()) {
    InitialData data{ProfileKind::compact_bump, 1.0, 0.0, 2.0,
                     VelocityProfile::zero};
    std::array<Recorder*, 1> recs{&diag};
    evolve(data, grid, params, solver, recs);
  }

  DiagnosticsConfig make_config() const {
    DiagnosticsConfig config;
    config.stride = 4;
    config.global_morawetz = true;
    config.morawetz_radii = {1.0, 2.0};
    config.weights = {flat, flat_conformal, half};
    return config;
  }
};

}  // namespace

TEST_CASE("truncated morawetz inequality on an evolved run") {
  const EstimateRun run;
  const double e = run.diag.initial_energy();

  for (double R : {1.0, 2.0}) {
    CAPTURE(R);
    const auto rep = morawetz_inequality(run.diag, R);
    CHECK(rep.bound == doctest::Approx(2.0 * e).epsilon(1e-12));
    CHECK(rep.interior_term >= 0.0);
    CHECK(rep.sphere_term >= 0.0);
    CHECK(rep.exterior_term >= 0.0);
    CHECK(rep.total ==
          doctest::Approx(rep.interior_term + rep.sphere_term +
                          rep.exterior_term)
              .epsilon(1e-12));
    CHECK(rep.total <= rep.bound);

    // Nonnegative integrands make the truncated horizon monotone.
    const auto half_horizon = morawetz_inequality(run.diag, R, 2.0);
    CHECK(half_horizon.total <= rep.total * (1.0 + 1e-12));
  }

  CHECK_THROWS_AS(morawetz_inequality(run.diag, 7.0), std::invalid_argument);
}

TEST_CASE("unweighted global bulk integrals stay comparable to the energy") {
  const EstimateRun run;
  const auto cor = unweighted_global_integrals(run.diag, 2.0);
  CHECK(cor.bulk >= 0.0);
  CHECK(cor.interior >= 0.0);
  CHECK(cor.sphere >= 0.0);
  CHECK(cor.bulk_ratio > 0.0);
  CHECK(cor.bulk_ratio < 20.0);
  CHECK(cor.interior_ratio < 20.0);
  CHECK(cor.sphere_ratio < 20.0);
  CHECK(cor.bulk ==
        doctest::Approx(global_bulk_integral(run.diag, 0.0, run.diag.t_end()))
            .epsilon(1e-12));
}

TEST_CASE("weighted bulk bounds") {
  const EstimateRun run;
  const double e = run.diag.initial_energy();

  // A flat weight with gamma < 1 reduces to the unweighted bulk integral.
  const auto flat = weighted_morawetz(run.diag, run.flat);
  CHECK(flat.lhs ==
        doctest::Approx(global_bulk_integral(run.diag, 0.0, run.diag.t_end()))
            .epsilon(1e-13));
  CHECK(flat.k1 ==
        doctest::Approx(run.diag.energy_series().front().inward)
            .epsilon(1e-12));

  // gamma = 1 carries the extra factor t/(r+t) <= 1.
  const auto conformal = weighted_morawetz(run.diag, run.flat_conformal);
  CHECK(conformal.lhs >= 0.0);
  CHECK(conformal.lhs <= flat.lhs * (1.0 + 1e-12));

  // Power weight: everything finite, K1 dominated by the weighted energy.
  const auto half = weighted_morawetz(run.diag, run.half);
  CHECK(half.lhs >= 0.0);
  CHECK(half.mu_weighted >= 0.0);
  const double ek = weighted_energy(run.diag.initial_state(), run.grid,
                                    run.params, 0.5);
  CHECK(half.k1 <= ek * (1.0 + 1e-9));
  CHECK(half.k1 > 0.0);
  CHECK(e > 0.0);

  WeightSpec unregistered = WeightSpec::power(0.9);
  CHECK_THROWS_AS(weighted_morawetz(run.diag, unregistered),
                  std::invalid_argument);
}

TEST_CASE("decay fit recovers synthetic power laws") {
  const double kappa = 0.6;
  const int count = 400;
  std::vector<double> times(count), inward(count);
  for (int i = 0; i < count; ++i) {
    times[i] = 2.0 + 78.0 * i / (count - 1);
    inward[i] = 7.0 * std::pow(times[i], -kappa);
  }

  const auto fit = decay_fit(times, inward, kappa, 7.0);
  CHECK(fit.kappa_target == kappa);
  CHECK(fit.fitted_slope == doctest::Approx(-kappa).epsilon(1e-9));
  CHECK(fit.fit_residual < 1e-10);
  CHECK(fit.bound_constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(fit.dropped_nonpositive);

  // (7 t^{-0.6})^{1/0.6} = 7^{5/3} / t, so the truncated norm over the
  // sampled span [2, 80] is (7^{5/3} ln 40)^{0.6}.
  const double exact = std::pow(std::pow(7.0, 5.0 / 3.0) * std::log(40.0),
                                kappa);
  CHECK(fit.truncated_norm == doctest::Approx(exact).epsilon(1e-3));

  // A dead sample inside the fit window is dropped and flagged.
  auto dented = inward;
  dented[300] = 0.0;
  const auto fit2 = decay_fit(times, dented, kappa, 7.0);
  CHECK(fit2.dropped_nonpositive);
  CHECK(fit2.fitted_slope == doctest::Approx(-kappa).epsilon(1e-3));

  CHECK_THROWS_AS(decay_fit(times, inward, 1.2, 7.0), std::domain_error);
  CHECK_THROWS_AS(decay_fit(times, inward, kappa, 0.0), std::domain_error);
  const std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(decay_fit(three, three, kappa, 7.0), std::invalid_argument);
}

TEST_CASE("averaging lemma: exact uniform value") {
  // dmu = dy on [0, 1], kappa = 1/2: f(x) = 2(1 - sqrt(x)) and
  // ||f||_{L^2}^2 = 2/3 while mu(R+) = 1.
  const int panels = 200;
  std::vector<double> ys(panels + 1), density(panels + 1, 1.0);
  for (int i = 0; i <= panels; ++i) ys[i] = static_cast<double>(i) / panels;

  const auto check = l_power_lemma_check(ys, density, 0.5);
  CHECK(check.mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(check.f_norm == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-6));
  CHECK(check.f_norm <= check.mass);
}

TEST_CASE("averaging lemma: point masses saturate the bound") {
  // A narrow triangle at y = 1 approximates a point mass, where the lemma
  // holds with equality.
  const double delta = 1e-3;
  std::vector<double> ys{0.0, 1.0 - delta, 1.0, 1.0 + delta, 2.0};
  std::vector<double> density{0.0, 0.0, 1.0, 0.0, 0.0};
  const auto check = l_power_lemma_check(ys, density, 0.5);
  CHECK(check.mass == doctest::Approx(delta).epsilon(1e-12));
  CHECK(check.f_norm <= check.mass);
  CHECK(check.f_norm >= 0.999 * check.mass);
}

TEST_CASE("averaging lemma: random densities never exceed the mass") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int panels = 120;
  std::vector<double> ys(panels + 1);
  for (int i = 0; i <= panels; ++i) ys[i] = 3.0 * i / panels;

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> density(panels + 1);
    for (auto& v : density) v = uni(rng);
    for (double kappa : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto check = l_power_lemma_check(ys, density, kappa);
      CAPTURE(trial);
      CAPTURE(kappa);
      CHECK(check.f_norm <= check.mass * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("averaging lemma: input validation") {
  const std::vector<double> ys{0.0, 1.0};
  const std::vector<double> density{1.0, 1.0};
  CHECK_THROWS_AS(l_power_lemma_check(ys, density, 0.0), std::domain_error);
  CHECK_THROWS_AS(l_power_lemma_check(ys, density, 1.0), std::domain_error);
  const std::vector<double> shorter{1.0};
  CHECK_THROWS_AS(l_power_lemma_check(ys, shorter, 0.5),
                  std::invalid_argument);
  const std::vector<double> negative{1.0, -1.0};
  CHECK_THROWS_AS(l_power_lemma_check(ys, negative, 0.5), std::domain_error);
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(l_power_lemma_check(unsorted, density, 0.5),
                  std::domain_error);

  const std::vector<double> zero{0.0, 0.0};
  const auto check = l_power_lemma_check(ys, zero, 0.5);
  CHECK(check.mass == 0.0);
  CHECK(check.f_norm == 0.0);
}
