#pragma once
/// Closed-form constants of the radial defocusing wave model: sphere areas,
/// critical exponents, the Hardy coefficient, the origin flux constant and
/// Strichartz admissibility.

#include <limits>

namespace radwave {

inline constexpr double infinite_exponent =
    std::numeric_limits<double>::infinity();

/// Area of the unit sphere S^{d-1} in R^d via the recursion
/// w_{k+2} = (2*pi/k) * w_k seeded with w_2 = 2*pi, w_3 = 4*pi.
double sphere_area(int d);

/// (d-1)(d-3)/4, the coefficient of |u|^2/r^2 in the split energies.
double hardy_coefficient(int d);

/// ((d-1)^2/16) * sphere_area(d); scales the origin measure in the
/// flux bookkeeping.
double origin_flux_constant(int d);

struct CriticalExponents {
  double conformal;        // 1 + 4/(d-1)
  double energy_critical;  // 1 + 4/(d-2)
};

CriticalExponents critical_exponents(int d);

/// Scaling-critical regularity d/2 - 2/(p-1).
double critical_regularity(int d, double p);

/// Minimal decay rate kappa_0(d, p) of the initial data for energy-space
/// scattering.  Evaluates the rational form and the gap form and insists
/// they agree to 1e-12; throws std::domain_error on a vanishing denominator.
double minimal_decay_rate(int d, double p);

/// The standing assumption on (d, p): 3 <= d <= 9, conformal <= p <
/// energy-critical, and for d >= 7 additionally p <= 1 + 3/(d-3).
bool admissible_model(int d, double p);

/// Dimension and nonlinearity exponent.  `checked` enforces the standing
/// assumption; `unchecked` carries a bypass flag for exploratory runs, and
/// verification commands refuse such params.
class ModelParams {
 public:
  static ModelParams checked(int d, double p);
  static ModelParams unchecked(int d, double p);

  int d() const { return d_; }
  double p() const { return p_; }
  bool validated() const { return validated_; }

 private:
  ModelParams(int d, double p, bool validated);
  int d_;
  double p_;
  bool validated_;
};

/// Exponent pair (q, r) with regularity s and gap rho; q may be
/// infinite_exponent, in which case 1/q is treated as 0.
struct StrichartzPair {
  double q = 2.0;
  double r = 2.0;
  double s = 0.0;
  double rho = 0.0;
};

/// Wave-admissibility of a pair in dimension d: 2 <= q <= inf, 2 <= r < inf,
/// 2/q + (d-1)/r <= (d-1)/2, (q, r) != (2, 2(d-1)/(d-3)), and the scaling
/// identity 1/q + d/r = d/2 + rho - s.
bool is_admissible(const StrichartzPair& pair, int d);

}  // namespace radwave
