#include "radwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radwave/mathlib.hpp"

namespace radwave {

Eigen::ArrayXd RadialGrid::centers() const {
  return (Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) + 0.5) *
         h;
}

void validate_grid(const RadialGrid& grid) {
  if (grid.d < 2 || grid.d > 9)
    throw std::domain_error("grid dimension outside supported range");
  if (!(grid.h > 0.0)) throw std::domain_error("grid cell width must be positive");
  if (grid.n < 4) throw std::domain_error("grid needs at least 4 cells");
}

Eigen::ArrayXd quadrature_weights(const RadialGrid& grid) {
  validate_grid(grid);
  return sphere_area(grid.d) * grid.h * grid.centers().pow(grid.d - 1);
}

double radial_integral(const Eigen::ArrayXd& values, const RadialGrid& grid) {
  if (values.size() != grid.n)
    throw std::invalid_argument("radial_integral: value count != cell count");
  return radial_integral(values, quadrature_weights(grid));
}

double clipped_integral(const Eigen::ArrayXd& values,
                        const Eigen::ArrayXd& weights, const RadialGrid& grid,
                        double r_lo, double r_hi) {
  if (values.size() != grid.n)
    throw std::invalid_argument("clipped_integral: value count != cell count");
  r_lo = std::max(r_lo, 0.0);
  r_hi = std::min(r_hi, grid.r_max());
  if (!(r_hi > r_lo)) return 0.0;

  const auto first =
      static_cast<Eigen::Index>(std::floor(r_lo / grid.h));
  auto last = static_cast<Eigen::Index>(std::floor(r_hi / grid.h));
  last = std::min(last, grid.n - 1);

  double total = 0.0;
  if (first == last) {
    const double frac = (r_hi - r_lo) / grid.h;
    return values(first) * weights(first) * frac;
  }
  // Partial end cells, full interior cells.
  const double frac_lo = ((first + 1) * grid.h - r_lo) / grid.h;
  total += values(first) * weights(first) * frac_lo;
  if (last > first + 1) {
    const Eigen::Index len = last - first - 1;
    total += (values.segment(first + 1, len) * weights.segment(first + 1, len))
                 .sum();
  }
  const double frac_hi = (r_hi - last * grid.h) / grid.h;
  total += values(last) * weights(last) * frac_hi;
  return total;
}

double radial_integral(const Eigen::ArrayXd& values, const RadialGrid& grid,
                       double r_lo, double r_hi) {
  return clipped_integral(values, quadrature_weights(grid), grid, r_lo, r_hi);
}

double sample_linear(const Eigen::ArrayXd& values, const RadialGrid& grid,
                     double r) {
  if (values.size() != grid.n)
    throw std::invalid_argument("sample_linear: value count != cell count");
  if (r < 0.0) r = -r;  // even extension through the origin
  const double first_center = 0.5 * grid.h;
  if (r <= first_center) return values(0);
  const double s = r / grid.h - 0.5;
  auto j = static_cast<Eigen::Index>(std::floor(s));
  if (j >= grid.n - 1) return values(grid.n - 1);
  const double f = s - static_cast<double>(j);
  return (1.0 - f) * values(j) + f * values(j + 1);
}

}  // namespace radwave
