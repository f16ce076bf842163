// Closed-form constants and admissibility logic, checked against
// independent evaluations (gamma-function sphere areas, hand-reduced
// rational forms, textbook exponent tables).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radwave/grid.hpp"
#include "radwave/mathlib.hpp"

using namespace radwave;

namespace {

// Independent sphere area: 2 pi^{d/2} / Gamma(d/2) via lgamma.
double sphere_area_gamma(int d) {
  const double half = 0.5 * static_cast<double>(d);
  return 2.0 * std::exp(half * std::log(M_PI) - std::lgamma(half));
}

// Hand-reduced rational form of the minimal decay rate.
double kappa0_rational(int d, double p) {
  const double num = (d + 2.0) * (d + 3.0) - (d + 3.0) * (d - 2.0) * p;
  const double den = (d - 1.0) * (d + 3.0) - (d + 1.0) * (d - 3.0) * p;
  return num / den;
}

}  // namespace

TEST_CASE("sphere areas match the gamma-function form") {
  for (int d = 2; d <= 9; ++d) {
    CAPTURE(d);
    CHECK(sphere_area(d) ==
          doctest::Approx(sphere_area_gamma(d)).epsilon(1e-13));
  }
  CHECK(sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(sphere_area(6) == doctest::Approx(std::pow(M_PI, 3)).epsilon(1e-14));
}

TEST_CASE("hardy coefficient (d-1)(d-3)/4") {
  CHECK(hardy_coefficient(3) == 0.0);
  CHECK(hardy_coefficient(4) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hardy_coefficient(5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hardy_coefficient(6) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(hardy_coefficient(9) == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("origin flux constant") {
  // c_d = ((d-1)^2/16) * sphere_area(d); d = 3 collapses to pi.
  CHECK(origin_flux_constant(3) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(origin_flux_constant(4) ==
        doctest::Approx(9.0 * M_PI * M_PI / 8.0).epsilon(1e-14));
  CHECK(origin_flux_constant(5) ==
        doctest::Approx(8.0 * M_PI * M_PI / 3.0).epsilon(1e-14));
  for (int d = 3; d <= 9; ++d) {
    CAPTURE(d);
    const double expected =
        (d - 1.0) * (d - 1.0) / 16.0 * sphere_area_gamma(d);
    CHECK(origin_flux_constant(d) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("critical exponents") {
  auto e3 = critical_exponents(3);
  CHECK(e3.conformal == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(e3.energy_critical == doctest::Approx(5.0).epsilon(1e-15));
  auto e4 = critical_exponents(4);
  CHECK(e4.conformal == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(e4.energy_critical == doctest::Approx(3.0).epsilon(1e-15));
  auto e5 = critical_exponents(5);
  CHECK(e5.conformal == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e5.energy_critical == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  auto e6 = critical_exponents(6);
  CHECK(e6.conformal == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(e6.energy_critical == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("critical regularity d/2 - 2/(p-1)") {
  CHECK(critical_regularity(3, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(critical_regularity(3, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(critical_regularity(4, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(critical_regularity(5, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("minimal decay rate: closed forms and endpoints") {
  // d = 3 reduces to (5 - p)/2.
  for (double p : {3.0, 3.5, 4.0, 4.5, 4.9}) {
    CAPTURE(p);
    CHECK(minimal_decay_rate(3, p) ==
          doctest::Approx((5.0 - p) / 2.0).epsilon(1e-12));
  }
  // Hand-computed interior value.
  CHECK(minimal_decay_rate(5, 2.2) ==
        doctest::Approx(4.0 / 7.0).epsilon(1e-12));

  // Equals 1 at the conformal exponent, 0 at the energy-critical one.
  for (int d = 3; d <= 9; ++d) {
    CAPTURE(d);
    const auto ex = critical_exponents(d);
    CHECK(minimal_decay_rate(d, ex.conformal) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(minimal_decay_rate(d, ex.energy_critical) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  // Agreement with the rational form across an admissible grid.
  for (int d = 3; d <= 9; ++d) {
    const auto ex = critical_exponents(d);
    for (int i = 0; i <= 8; ++i) {
      const double p =
          ex.conformal + (ex.energy_critical - ex.conformal) * i / 8.0;
      if (!admissible_model(d, p)) continue;
      CAPTURE(d);
      CAPTURE(p);
      CHECK(minimal_decay_rate(d, p) ==
            doctest::Approx(kappa0_rational(d, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("minimal decay rate decreases in p") {
  for (int d = 3; d <= 6; ++d) {
    const auto ex = critical_exponents(d);
    double prev = 2.0;
    for (int i = 0; i <= 16; ++i) {
      const double p =
          ex.conformal + (ex.energy_critical - ex.conformal) * i / 16.0;
      const double k = minimal_decay_rate(d, p);
      CAPTURE(d);
      CAPTURE(p);
      CHECK(k < prev + 1e-12);
      CHECK(k >= -1e-12);
      CHECK(k <= 1.0 + 1e-12);
      prev = k;
    }
  }
}

TEST_CASE("standing assumption on (d, p)") {
  CHECK(admissible_model(3, 3.0));
  CHECK(admissible_model(3, 4.99));
  CHECK_FALSE(admissible_model(3, 5.0));   // p < energy-critical is strict
  CHECK_FALSE(admissible_model(3, 2.99));  // below conformal
  CHECK(admissible_model(4, 2.5));
  CHECK(admissible_model(6, 1.8));  // conformal endpoint included
  CHECK_FALSE(admissible_model(6, 2.0));
  // d >= 7 carries the extra cap p <= 1 + 3/(d-3).
  CHECK(admissible_model(7, 1.70));
  CHECK(admissible_model(7, 1.75));
  CHECK_FALSE(admissible_model(7, 1.78));
  CHECK(admissible_model(9, 1.5));   // cap = 1.5, conformal = 1.5
  CHECK_FALSE(admissible_model(9, 1.55));
  CHECK_FALSE(admissible_model(2, 3.0));
  CHECK_FALSE(admissible_model(10, 1.4));
}

TEST_CASE("model params: checked and unchecked") {
  const auto ok = ModelParams::checked(3, 3.0);
  CHECK(ok.d() == 3);
  CHECK(ok.p() == 3.0);
  CHECK(ok.validated());

  CHECK_THROWS_AS(ModelParams::checked(3, 2.0), std::domain_error);
  CHECK_THROWS_AS(ModelParams::checked(12, 3.0), std::domain_error);

  const auto loose = ModelParams::unchecked(2, 7.0);
  CHECK(loose.d() == 2);
  CHECK_FALSE(loose.validated());
  CHECK_THROWS_AS(ModelParams::unchecked(1, 3.0), std::domain_error);
  CHECK_THROWS_AS(ModelParams::unchecked(3, 1.0), std::domain_error);
}

TEST_CASE("strichartz admissibility") {
  // Energy flux pair (inf, 2) at s = 0.
  CHECK(is_admissible({infinite_exponent, 2.0, 0.0, 0.0}, 3));
  CHECK(is_admissible({infinite_exponent, 2.0, 0.0, 0.0}, 7));

  // Energy endpoint (2, 2d/(d-3)) at regularity one.
  for (int d = 4; d <= 9; ++d) {
    CAPTURE(d);
    const double r = 2.0 * d / (d - 3.0);
    CHECK(is_admissible({2.0, r, 1.0, 0.0}, d));
  }

  // The forbidden endpoint (2, 2(d-1)/(d-3)) is rejected even though the
  // dispersive line and the scaling identity hold.
  CHECK_FALSE(is_admissible({2.0, 6.0, 5.0 / 6.0, 0.0}, 4));
  CHECK_FALSE(is_admissible({2.0, 4.0, 0.75, 0.0}, 5));

  // r must be finite and both exponents at least 2.
  CHECK_FALSE(is_admissible({4.0, infinite_exponent, 1.5, 0.0}, 3));
  CHECK_FALSE(is_admissible({1.5, 4.0, 0.5, 0.0}, 3));
  CHECK_FALSE(is_admissible({4.0, 1.5, 0.5, 0.0}, 3));

  // Scaling identity is enforced: (4, 4) in d = 3 needs s = 1/2.
  CHECK(is_admissible({4.0, 4.0, 0.5, 0.0}, 3));
  CHECK_FALSE(is_admissible({4.0, 4.0, 0.6, 0.0}, 3));

  // Dispersive line violated.
  CHECK_FALSE(is_admissible({2.0, 8.0, 1.0, 0.0}, 3));
}

TEST_CASE("radial quadrature nails decaying profiles") {
  // Midpoint sums are superconvergent when the integrand's odd derivatives
  // vanish at both ends, as they do for a gaussian against r^{d-1} dr.
  for (int d : {3, 6}) {
    CAPTURE(d);
    RadialGrid grid{d, 10.0 / 1024.0, 1024};
    const Eigen::ArrayXd r = grid.centers();
    const Eigen::ArrayXd f = (-r.square()).exp();
    const double exact = std::pow(M_PI, 0.5 * d);
    CHECK(std::abs(radial_integral(f, grid) - exact) / exact < 1e-12);
  }
}

TEST_CASE("radial quadrature is second order against a live boundary") {
  // cos(r) keeps a nonzero slope at r_max, so the midpoint error term
  // (h^2/24) g'(r_max) survives and fixes the observed order at 2.
  const double R = 10.0;
  const double exact =
      4.0 * M_PI *
      ((R * R - 2.0) * std::sin(R) + 2.0 * R * std::cos(R));
  std::vector<double> errors;
  for (Eigen::Index n : {512, 1024, 2048}) {
    RadialGrid grid{3, R / static_cast<double>(n), n};
    const Eigen::ArrayXd f = grid.centers().cos();
    errors.push_back(std::abs(radial_integral(f, grid) - exact));
  }
  CHECK(errors.back() / std::abs(exact) < 1e-6);
  const double order = std::log2(errors[0] / errors[1]);
  CHECK(order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("clipped integrals are additive and consistent") {
  RadialGrid grid{3, 0.01, 1000};
  const Eigen::ArrayXd r = grid.centers();
  const Eigen::ArrayXd f = (1.0 + r).log() * (-0.3 * r).exp();
  const Eigen::ArrayXd w = quadrature_weights(grid);

  const double whole = radial_integral(f, grid);
  CHECK(clipped_integral(f, w, grid, 0.0, grid.r_max()) ==
        doctest::Approx(whole).epsilon(1e-13));

  // Split points off the cell lattice.
  const double a = 2.3456789, b = 7.0123;
  const double left = clipped_integral(f, w, grid, 0.0, a);
  const double mid = clipped_integral(f, w, grid, a, b);
  const double right = clipped_integral(f, w, grid, b, grid.r_max());
  CHECK(left + mid + right == doctest::Approx(whole).epsilon(1e-13));
  CHECK(radial_integral(f, grid, a, b) == doctest::Approx(mid).epsilon(1e-13));
}

TEST_CASE("linear sampling of cell data") {
  RadialGrid grid{3, 0.25, 64};
  Eigen::ArrayXd lin = grid.centers();  // u(r) = r
  CHECK(sample_linear(lin, grid, grid.center(10)) ==
        doctest::Approx(grid.center(10)).epsilon(1e-15));
  CHECK(sample_linear(lin, grid, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Even extension below the first center keeps the value flat.
  Eigen::ArrayXd flat = Eigen::ArrayXd::Constant(64, 3.5);
  CHECK(sample_linear(flat, grid, 0.0) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(validate_grid({1, 0.1, 64}), std::domain_error);
  CHECK_THROWS_AS(validate_grid({3, -0.1, 64}), std::domain_error);
  CHECK_THROWS_AS(validate_grid({3, 0.1, 3}), std::domain_error);
  CHECK_NOTHROW(validate_grid({3, 0.1, 64}));
}
