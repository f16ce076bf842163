#pragma once
/// Admissible radial weights a(r): nondecreasing with a'(r) <= gamma a(r)/r.
/// Power weights r^kappa satisfy this exactly with gamma = kappa; tabulated
/// weights are checked pairwise on their samples.

#include <string>
#include <vector>

namespace radwave {

struct WeightSpec {
  enum class Kind { power, table };

  Kind kind = Kind::power;
  double kappa = 0.5;  // exponent for power weights
  double gamma = 0.5;  // growth bound, in (0, 1]
  std::vector<double> radii;   // table samples, strictly increasing
  std::vector<double> values;  // nonnegative weight values

  static WeightSpec power(double kappa);
  static WeightSpec table(std::vector<double> radii, std::vector<double> values,
                          double gamma);

  /// Throws std::domain_error when the growth/monotonicity conditions fail.
  void validate() const;

  double operator()(double r) const;
  std::string label() const;
  bool same_as(const WeightSpec& other) const;
};

}  // namespace radwave
