#pragma once
/// Cell-centered radial grid and midpoint quadrature against the measure
/// sphere_area(d) * r^{d-1} dr.

#include <Eigen/Dense>

namespace radwave {

struct RadialGrid {
  int d = 3;
  double h = 0.0;      // cell width
  Eigen::Index n = 0;  // number of cells; centers at (j + 1/2) h

  double r_max() const { return h * static_cast<double>(n); }
  double center(Eigen::Index j) const {
    return (static_cast<double>(j) + 0.5) * h;
  }
  Eigen::ArrayXd centers() const;
};

/// Throws std::domain_error unless d in [2, 9], h > 0 and n >= 4.
void validate_grid(const RadialGrid& grid);

/// Midpoint weights sphere_area(d) * r_j^{d-1} * h.
Eigen::ArrayXd quadrature_weights(const RadialGrid& grid);

/// Integral of a cell-sampled radial function over all of R^d.
double radial_integral(const Eigen::ArrayXd& values, const RadialGrid& grid);

/// Same against precomputed weights (hot paths).
inline double radial_integral(const Eigen::ArrayXd& values,
                              const Eigen::ArrayXd& weights) {
  return (values * weights).sum();
}

/// Integral restricted to r in [r_lo, r_hi]; boundary cells enter with their
/// linear overlap fraction.
double radial_integral(const Eigen::ArrayXd& values, const RadialGrid& grid,
                       double r_lo, double r_hi);

/// Restricted integral against precomputed full-cell weights.
double clipped_integral(const Eigen::ArrayXd& values,
                        const Eigen::ArrayXd& weights, const RadialGrid& grid,
                        double r_lo, double r_hi);

/// Linear interpolation of cell-centered samples at radius r; even extension
/// below the first center, clamped at the outer boundary.
double sample_linear(const Eigen::ArrayXd& values, const RadialGrid& grid,
                     double r);

}  // namespace radwave
