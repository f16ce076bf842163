#include "radwave/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "radwave/flux.hpp"

namespace radwave {

// --- WeightSpec ------------------------------------------------------------

WeightSpec WeightSpec::power(double kappa) {
  WeightSpec spec;
  spec.kind = Kind::power;
  spec.kappa = kappa;
  spec.gamma = kappa;
  return spec;
}

WeightSpec WeightSpec::table(std::vector<double> radii,
                             std::vector<double> values, double gamma) {
  WeightSpec spec;
  spec.kind = Kind::table;
  spec.kappa = 0.0;
  spec.gamma = gamma;
  spec.radii = std::move(radii);
  spec.values = std::move(values);
  return spec;
}

void WeightSpec::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("weight gamma must lie in (0, 1]");
  if (kind == Kind::power) {
    if (!(kappa > 0.0 && kappa <= 1.0))
      throw std::domain_error("power weight kappa must lie in (0, 1]");
    if (kappa > gamma + 1e-12)
      throw std::domain_error("power weight needs gamma >= kappa");
    return;
  }
  if (radii.size() < 2 || radii.size() != values.size())
    throw std::domain_error("weight table needs matching samples (>= 2)");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::domain_error("weight table radii must increase strictly");
    if (values[i] < 0.0)
      throw std::domain_error("weight table values must be nonnegative");
  }
  if (radii.front() < 0.0)
    throw std::domain_error("weight table radii must be nonnegative");
  for (size_t i = 0; i + 1 < radii.size(); ++i) {
    const double slope =
        (values[i + 1] - values[i]) / (radii[i + 1] - radii[i]);
    if (slope < -1e-12)
      throw std::domain_error("weight table must be nondecreasing");
    // a' <= gamma a / r, checked against the left sample where a/r is
    // largest on the panel for admissible weights.
    if (radii[i] > 0.0 && slope > gamma * values[i] / radii[i] + 1e-12) {
      std::ostringstream msg;
      msg << "weight table grows faster than gamma a/r near r = " << radii[i];
      throw std::domain_error(msg.str());
    }
  }
}

double WeightSpec::operator()(double r) const {
  if (kind == Kind::power) return std::pow(r, kappa);
  if (r <= radii.front()) return values.front();
  if (r >= radii.back()) return values.back();
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  const size_t k = static_cast<size_t>(it - radii.begin()) - 1;
  const double f = (r - radii[k]) / (radii[k + 1] - radii[k]);
  return (1.0 - f) * values[k] + f * values[k + 1];
}

std::string WeightSpec::label() const {
  std::ostringstream out;
  if (kind == Kind::power)
    out << "power:" << kappa;
  else
    out << "table:gamma=" << gamma << ":n=" << radii.size();
  return out.str();
}

bool WeightSpec::same_as(const WeightSpec& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::power)
    return std::abs(kappa - other.kappa) <= 1e-12 &&
           std::abs(gamma - other.gamma) <= 1e-12;
  return std::abs(gamma - other.gamma) <= 1e-12 && radii == other.radii &&
         values == other.values;
}

// --- Morawetz reports -------------------------------------------------------

namespace {

const RadiusTrace& find_radius(const RunDiagnostics& diag, double R) {
  for (const RadiusTrace& trace : diag.radius_traces())
    if (std::abs(trace.radius - R) <= 1e-12) return trace;
  throw std::invalid_argument(
      "morawetz radius was not registered with the run diagnostics");
}

}  // namespace

MorawetzReport morawetz_inequality(const RunDiagnostics& diag, double R,
                                   double horizon) {
  const RadiusTrace& trace = find_radius(diag, R);
  const double t0 = diag.t_begin();
  const double t1 = horizon > 0.0 ? std::min(horizon, diag.t_end())
                                  : diag.t_end();
  const int d = diag.grid().d;
  const double p = diag.params().p();
  const double c_pot = ((d - 1.0) * (p - 1.0) - 2.0) / (p + 1.0);

  const double c_ext = (d - 1.0) * (p - 1.0) / (2.0 * (p + 1.0));

  MorawetzReport rep;
  rep.radius = R;
  const double quad = integrate_series(trace.quad_interior, t0, t1);
  const double pot = integrate_series(trace.pot_interior, t0, t1);
  rep.interior_term = (quad + c_pot * pot) / (2.0 * R);
  rep.sphere_term =
      (d - 1.0) / (4.0 * R * R) * integrate_series(trace.sphere, t0, t1);
  rep.exterior_term = integrate_series(trace.ext_hardy, t0, t1) +
                      c_ext * integrate_series(trace.ext_pot, t0, t1);
  rep.total = rep.interior_term + rep.sphere_term + rep.exterior_term;
  rep.bound = 2.0 * diag.initial_energy();
  return rep;
}

GlobalBulkIntegrals unweighted_global_integrals(const RunDiagnostics& diag,
                                               double R) {
  const RadiusTrace& trace = find_radius(diag, R);
  const double t0 = diag.t_begin();
  const double t1 = diag.t_end();
  const double energy = diag.initial_energy();

  GlobalBulkIntegrals out;
  out.bulk = global_bulk_integral(diag, t0, t1);
  out.interior = integrate_series(trace.quad_interior, t0, t1) +
                 integrate_series(trace.pot_interior, t0, t1);
  out.sphere = integrate_series(trace.sphere, t0, t1);
  out.bulk_ratio = out.bulk / energy;
  out.interior_ratio = out.interior / (R * energy);
  out.sphere_ratio = out.sphere / (R * R * energy);
  return out;
}

WeightedMorawetz weighted_morawetz(const RunDiagnostics& diag,
                                   const WeightSpec& weight) {
  const WeightTrace* found = nullptr;
  for (const WeightTrace& trace : diag.weight_traces())
    if (trace.weight.same_as(weight)) {
      found = &trace;
      break;
    }
  if (found == nullptr)
    throw std::invalid_argument(
        "weight was not registered with the run diagnostics");

  WeightedMorawetz out;
  out.lhs = integrate_series(found->bulk, diag.t_begin(), diag.t_end());

  const ScalarSeries& amp = diag.axis_amplitude();
  if (amp.t.size() < 2)
    throw std::domain_error("weighted_morawetz: axis trace was not recorded");
  ScalarSeries weighted_density;
  weighted_density.t = amp.t;
  weighted_density.value.reserve(amp.t.size());
  for (size_t k = 0; k < amp.t.size(); ++k)
    weighted_density.value.push_back(weight(amp.t[k]) * amp.value[k] *
                                     amp.value[k]);
  out.mu_weighted =
      integrate_series(weighted_density, diag.t_begin(), diag.t_end());

  // Weighted inward part of the initial data.
  const RadialGrid& grid = diag.grid();
  const FieldState& init = diag.initial_state();
  const Eigen::ArrayXd w = quadrature_weights(grid);
  const Eigen::ArrayXd r = grid.centers();
  const double p = diag.params().p();
  const double lambda = hardy_coefficient(grid.d);
  const Eigen::ArrayXd lplus = apply_l(init, grid, +1);
  Eigen::ArrayXd a(grid.n);
  for (Eigen::Index j = 0; j < grid.n; ++j) a(j) = weight(r(j));
  Eigen::ArrayXd pot = init.u.abs().pow(p + 1.0);
  out.k1 = radial_integral(
      (a * (0.25 * lplus.square() + 0.25 * lambda * (init.u / r).square() +
            pot / (2.0 * (p + 1.0))))
          .eval(),
      w);
  return out;
}

DecayFit decay_fit(std::span<const double> times,
                   std::span<const double> inward, double kappa,
                   double e_kappa, double truncate_at) {
  if (times.size() != inward.size() || times.size() < 4)
    throw std::invalid_argument("decay_fit: need matching series (>= 4)");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::domain_error("decay_fit: kappa must lie in (0, 1)");
  if (!(e_kappa > 0.0))
    throw std::domain_error("decay_fit: weighted energy must be positive");

  double t_hi = truncate_at > 0.0 ? truncate_at : times.back();
  t_hi = std::min(t_hi, times.back());
  const double t_lo = t_hi / 8.0;

  DecayFit fit;
  fit.kappa_target = kappa;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t count = 0;
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    if (t < t_lo || t > t_hi + 1e-12) continue;
    if (!(inward[k] > 0.0)) {
      fit.dropped_nonpositive = true;
      continue;
    }
    const double x = std::log(t);
    const double y = std::log(inward[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 3)
    throw std::domain_error("decay_fit: too few positive samples in window");
  const double denom = count * sxx - sx * sx;
  fit.fitted_slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.fitted_slope * sx) / count;

  double rss = 0.0;
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    if (t < t_lo || t > t_hi + 1e-12 || !(inward[k] > 0.0)) continue;
    const double res =
        std::log(inward[k]) - (intercept + fit.fitted_slope * std::log(t));
    rss += res * res;
  }
  fit.fit_residual = std::sqrt(rss / static_cast<double>(count));

  ScalarSeries powered;
  for (size_t k = 0; k < times.size(); ++k) {
    if (times[k] > t_hi + 1e-12) break;
    if (times[k] > 0.0)
      fit.bound_constant = std::max(
          fit.bound_constant, inward[k] * std::pow(times[k], kappa) / e_kappa);
    powered.t.push_back(times[k]);
    powered.value.push_back(inward[k] <= 0.0
                                ? 0.0
                                : std::pow(inward[k], 1.0 / kappa));
  }
  fit.truncated_norm = std::pow(
      integrate_series(powered, powered.t.front(), powered.t.back()), kappa);
  return fit;
}

DecayFit decay_fit(const RunDiagnostics& diag, double kappa, double e_kappa,
                   double truncate_at) {
  const auto& series = diag.energy_series();
  if (series.size() < 4)
    throw std::domain_error("decay_fit: energy series was not recorded");
  std::vector<double> times, inward;
  times.reserve(series.size());
  inward.reserve(series.size());
  for (const EnergyRecord& rec : series) {
    times.push_back(rec.t);
    inward.push_back(rec.inward);
  }
  return decay_fit(times, inward, kappa, e_kappa, truncate_at);
}

// --- L^{1/kappa} averaging lemma ---------------------------------------------

namespace {

// int_{lo}^{hi} y^{-kappa} (alpha + beta y) dy, exponents 1-kappa, 2-kappa > 0.
double panel_moment(double lo, double hi, double alpha, double beta,
                    double kappa) {
  const double e1 = 1.0 - kappa;
  const double e2 = 2.0 - kappa;
  return alpha * (std::pow(hi, e1) - std::pow(lo, e1)) / e1 +
         beta * (std::pow(hi, e2) - std::pow(lo, e2)) / e2;
}

}  // namespace

LPowerCheck l_power_lemma_check(std::span<const double> ys,
                                std::span<const double> density,
                                double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::domain_error("l_power_lemma_check: kappa must lie in (0, 1)");
  const size_t m = ys.size();
  if (m < 2 || density.size() != m)
    throw std::invalid_argument(
        "l_power_lemma_check: need matching samples (>= 2)");
  if (ys[0] < 0.0)
    throw std::domain_error("l_power_lemma_check: support must be in y >= 0");
  for (size_t i = 0; i < m; ++i) {
    if (i > 0 && !(ys[i] > ys[i - 1]))
      throw std::domain_error("l_power_lemma_check: y grid must increase");
    if (density[i] < 0.0)
      throw std::domain_error("l_power_lemma_check: density must be >= 0");
  }

  // Panel coefficients rho(y) = alpha_i + beta_i y and suffix sums of the
  // kappa-moment so f is exact at panel edges.
  std::vector<double> alpha(m - 1), beta(m - 1), f_edge(m, 0.0);
  double mass = 0.0;
  for (size_t i = 0; i + 1 < m; ++i) {
    beta[i] = (density[i + 1] - density[i]) / (ys[i + 1] - ys[i]);
    alpha[i] = density[i] - beta[i] * ys[i];
    mass += 0.5 * (density[i] + density[i + 1]) * (ys[i + 1] - ys[i]);
  }
  for (size_t i = m - 1; i-- > 0;)
    f_edge[i] =
        f_edge[i + 1] + panel_moment(ys[i], ys[i + 1], alpha[i], beta[i], kappa);

  auto f_at = [&](size_t panel, double x) {
    return f_edge[panel + 1] +
           panel_moment(x, ys[panel + 1], alpha[panel], beta[panel], kappa);
  };

  // Gauss-Legendre (8 point) per panel for int f^{1/kappa} dx.
  static const double gl_x[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
  static const double gl_w[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
  const double inv_kappa = 1.0 / kappa;
  double norm_pow = 0.0;
  if (ys[0] > 0.0)  // f is constant below the support
    norm_pow += ys[0] * std::pow(f_edge[0], inv_kappa);
  for (size_t i = 0; i + 1 < m; ++i) {
    const double half = 0.5 * (ys[i + 1] - ys[i]);
    const double mid = 0.5 * (ys[i + 1] + ys[i]);
    double acc = 0.0;
    for (int g = 0; g < 8; ++g)
      acc += gl_w[g] * std::pow(f_at(i, mid + half * gl_x[g]), inv_kappa);
    norm_pow += half * acc;
  }

  LPowerCheck out;
  out.mass = mass;
  out.f_norm = std::pow(norm_pow, kappa);
  return out;
}

}  // namespace radwave
