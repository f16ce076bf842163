#include "radwave/mathlib.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace radwave {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

[[noreturn]] void bad_dimension(int d) {
  std::ostringstream msg;
  msg << "dimension d = " << d << " outside supported range";
  throw std::domain_error(msg.str());
}
}  // namespace

double sphere_area(int d) {
  if (d < 2) bad_dimension(d);
  double area = (d % 2 == 0) ? two_pi : 2.0 * two_pi;
  for (int k = (d % 2 == 0) ? 2 : 3; k + 2 <= d; k += 2) area *= two_pi / k;
  return area;
}

double hardy_coefficient(int d) {
  if (d < 2) bad_dimension(d);
  return (d - 1.0) * (d - 3.0) / 4.0;
}

double origin_flux_constant(int d) {
  if (d < 2) bad_dimension(d);
  return (d - 1.0) * (d - 1.0) / 16.0 * sphere_area(d);
}

CriticalExponents critical_exponents(int d) {
  if (d < 3) bad_dimension(d);
  return {1.0 + 4.0 / (d - 1.0), 1.0 + 4.0 / (d - 2.0)};
}

double critical_regularity(int d, double p) {
  if (d < 2) bad_dimension(d);
  if (!(p > 1.0)) throw std::domain_error("exponent p must exceed 1");
  return d / 2.0 - 2.0 / (p - 1.0);
}

double minimal_decay_rate(int d, double p) {
  if (d < 3) bad_dimension(d);
  if (!(p > 1.0)) throw std::domain_error("exponent p must exceed 1");
  const double den = (d - 1.0) * (d + 3.0) - (d + 1.0) * (d - 3.0) * p;
  if (std::abs(den) < 1e-14)
    throw std::domain_error("minimal decay rate undefined: denominator vanishes");
  const double direct = ((d + 2.0) * (d + 3.0) - (d + 3.0) * (d - 2.0) * p) / den;

  const auto [pc, pe] = critical_exponents(d);
  const double gap = pe - p;
  const double mix = gap + 3.0 * (d - 1.0) / ((d - 2.0) * (d + 3.0)) * (p - pc);
  if (std::abs(mix) < 1e-14)
    throw std::domain_error("minimal decay rate undefined: gap form denominator vanishes");
  const double via_gap = gap / mix;

  if (std::abs(direct - via_gap) >
      1e-12 * std::max({1.0, std::abs(direct), std::abs(via_gap)}))
    throw std::logic_error("minimal decay rate forms disagree");
  return direct;
}

bool admissible_model(int d, double p) {
  if (d < 3 || d > 9) return false;
  const auto [pc, pe] = critical_exponents(d);
  if (!(p >= pc && p < pe)) return false;
  if (d >= 7 && p > 1.0 + 3.0 / (d - 3.0)) return false;
  return true;
}

ModelParams::ModelParams(int d, double p, bool validated)
    : d_(d), p_(p), validated_(validated) {}

ModelParams ModelParams::checked(int d, double p) {
  if (!admissible_model(d, p)) {
    std::ostringstream msg;
    msg << "(d, p) = (" << d << ", " << p
        << ") violates the standing assumption on the model";
    throw std::domain_error(msg.str());
  }
  return ModelParams(d, p, true);
}

ModelParams ModelParams::unchecked(int d, double p) {
  if (d < 2) bad_dimension(d);
  if (!(p > 1.0)) throw std::domain_error("exponent p must exceed 1");
  return ModelParams(d, p, false);
}

bool is_admissible(const StrichartzPair& pair, int d) {
  if (d < 3) bad_dimension(d);
  const bool q_infinite = pair.q == infinite_exponent;
  if (!(pair.q >= 2.0)) return false;
  if (!(pair.r >= 2.0) || !std::isfinite(pair.r)) return false;

  const double inv_q = q_infinite ? 0.0 : 1.0 / pair.q;
  if (2.0 * inv_q + (d - 1.0) / pair.r > (d - 1.0) / 2.0 + 1e-12) return false;

  if (d > 3) {
    const double forbidden_r = 2.0 * (d - 1.0) / (d - 3.0);
    if (std::abs(pair.q - 2.0) <= 1e-12 &&
        std::abs(pair.r - forbidden_r) <= 1e-12)
      return false;
  }

  const double scaling_lhs = inv_q + d / pair.r;
  const double scaling_rhs = d / 2.0 + pair.rho - pair.s;
  return std::abs(scaling_lhs - scaling_rhs) <= 1e-9;
}

}  // namespace radwave
