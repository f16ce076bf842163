#include "radwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace radwave {

namespace {

constexpr double kTimeTol = 1e-9;

Eigen::ArrayXd abs_power(const Eigen::ArrayXd& u, double q) {
  if (q == 4.0) return (u * u).square();
  if (q == 3.0) return u.abs() * u * u;
  if (q == 6.0) return (u * u).cube();
  return u.abs().pow(q);
}

double origin_amplitude(const Eigen::ArrayXd& u) {
  // Even-parabola extrapolation from the first two cell centers h/2, 3h/2.
  return (9.0 * u(0) - u(1)) / 8.0;
}

}  // namespace

double integrate_series(const ScalarSeries& series, double a, double b) {
  const size_t m = series.t.size();
  if (m < 2) return 0.0;
  a = std::max(a, series.t.front());
  b = std::min(b, series.t.back());
  if (!(b > a)) return 0.0;

  const auto begin = series.t.begin();
  auto it = std::upper_bound(begin, series.t.end(), a);
  size_t k = static_cast<size_t>(it - begin) - 1;

  double total = 0.0;
  while (k + 1 < m && series.t[k] < b) {
    const double t0 = series.t[k];
    const double t1 = series.t[k + 1];
    const double lo = std::max(a, t0);
    const double hi = std::min(b, t1);
    if (hi > lo) {
      const double w = t1 - t0;
      const double g0 = series.value[k] + (series.value[k + 1] - series.value[k]) * (lo - t0) / w;
      const double g1 = series.value[k] + (series.value[k + 1] - series.value[k]) * (hi - t0) / w;
      total += 0.5 * (g0 + g1) * (hi - lo);
    }
    ++k;
  }
  return total;
}

double max_series(const ScalarSeries& series, double a, double b) {
  double best = 0.0;
  bool seen = false;
  for (size_t k = 0; k < series.t.size(); ++k) {
    if (series.t[k] < a - kTimeTol || series.t[k] > b + kTimeTol) continue;
    best = seen ? std::max(best, series.value[k]) : series.value[k];
    seen = true;
  }
  return seen ? best : 0.0;
}

struct RunDiagnostics::StepArrays {
  Eigen::ArrayXd dudr, lplus_sq, lminus_sq, pot, e_prime, mden, ext_hardy_den,
      ext_pot_den, ext_den, e_full;

  StepArrays(const FieldState& state, const RadialGrid& grid,
             const Eigen::ArrayXd& r, double p) {
    const double lambda = hardy_coefficient(grid.d);
    const double half = 0.5 * (grid.d - 1.0);
    dudr = radial_derivative(state.u, grid);
    const Eigen::ArrayXd lu = dudr + half * state.u / r;
    lplus_sq = (lu + state.v).square();
    lminus_sq = (lu - state.v).square();
    pot = abs_power(state.u, p + 1.0);
    const Eigen::ArrayXd hardy_den = lambda * (state.u / r).square();
    e_prime = 0.5 * hardy_den + pot / (p + 1.0);
    mden = (0.5 * hardy_den +
            (grid.d - 1.0) * (p - 1.0) / (4.0 * (p + 1.0)) * pot) /
           r;
    ext_hardy_den = hardy_den / r;
    ext_pot_den = pot / r;
    ext_den = ext_hardy_den + ext_pot_den;
    e_full = 0.5 * (dudr.square() + state.v.square()) + pot / (p + 1.0);
  }
};

RunDiagnostics::RunDiagnostics(const RadialGrid& grid,
                               const ModelParams& params,
                               const SolverConfig& solver,
                               DiagnosticsConfig config)
    : grid_(grid),
      params_(params),
      config_(std::move(config)),
      cfl_(solver.cfl),
      t_final_(solver.t_final) {
  validate_grid(grid_);
  if (config_.stride < 1)
    throw std::domain_error("diagnostics stride must be >= 1");
  dt_ = solver.cfl * grid_.h;
  planned_steps_ = std::lround(t_final_ / dt_);
  qw_ = quadrature_weights(grid_);
  centers_ = grid_.centers();

  const double r_domain = grid_.r_max();
  for (const Region& region : config_.regions) {
    if (region.t_min() < -kTimeTol || region.t_max() > t_final_ + kTimeTol)
      throw std::domain_error("region '" + region.id() +
                              "' exceeds the run time span");
    if (region.r_max() > r_domain + kTimeTol)
      throw std::domain_error("region '" + region.id() +
                              "' exceeds the grid radius");
    RegionTrace trace;
    trace.region = region;
    for (const SurfaceSegment& seg : region.segments()) {
      SegmentTrace st;
      st.segment = seg;
      st.is_axis = seg.kind == SegmentKind::axis;
      trace.segments.push_back(std::move(st));
    }
    regions_.push_back(std::move(trace));
  }

  for (double tau : config_.forward_cone_offsets) {
    ConeTrace cone;
    cone.forward = true;
    cone.offset = tau;
    cones_.push_back(std::move(cone));
  }
  for (double s : config_.backward_cone_offsets) {
    ConeTrace cone;
    cone.forward = false;
    cone.offset = s;
    cones_.push_back(std::move(cone));
  }

  for (double R : config_.morawetz_radii) {
    if (!(R > 0.0 && R < r_domain))
      throw std::domain_error("morawetz radius outside the grid");
    RadiusTrace trace;
    trace.radius = R;
    radii_.push_back(std::move(trace));
  }

  for (const WeightSpec& w : config_.weights) {
    w.validate();
    WeightTrace trace;
    trace.weight = w;
    weights_.push_back(std::move(trace));
  }

  for (double c : config_.interior_speeds) {
    if (!(c > 0.0))
      throw std::domain_error("interior speed must be positive");
    InteriorTrace trace;
    trace.speed = c;
    interiors_.push_back(std::move(trace));
  }

  for (double e : config_.norm_exponents) {
    if (!(e >= 1.0))
      throw std::domain_error("norm exponent must be >= 1");
    NormTrace trace;
    trace.exponent = e;
    norms_.push_back(std::move(trace));
  }

  for (double T : config_.snapshot_times) {
    if (T < -kTimeTol || T > t_final_ + kTimeTol)
      throw std::domain_error("snapshot time outside the run span");
    const long k = std::lround(T / dt_);
    if (std::abs(T - static_cast<double>(k) * dt_) > 0.01 * dt_)
      throw std::domain_error("snapshot time is not on the step lattice");
    snapshot_steps_.push_back(k);
    Snapshot snap;
    snap.requested_t = T;
    snapshots_.push_back(std::move(snap));
  }

  need_arrays_ = !regions_.empty() || !cones_.empty() || !radii_.empty() ||
                 !weights_.empty() || config_.global_morawetz;
}

void RunDiagnostics::record_energy(const FieldState& state) {
  const EnergyReport rep = split_energy(state, grid_, params_);
  EnergyRecord rec;
  rec.t = state.t;
  rec.total = rep.total;
  rec.inward = rep.inward;
  rec.outward = rep.outward;
  rec.kinetic = rep.components.kinetic;
  rec.radial_gradient = rep.components.radial_gradient;
  rec.potential = rep.components.potential;
  rec.hardy = rep.components.hardy;
  energy_.push_back(rec);
}

void RunDiagnostics::observe(const FieldState& state, long step) {
  const double t = state.t;
  if (step == 0) {
    t_begin_ = t;
    initial_state_ = state;
    initial_energy_ = total_energy(state, grid_, params_);
  }
  t_end_ = t;

  if (config_.axis_trace) {
    // The origin measure lives exactly where the Hardy coefficient
    // (d-1)(d-3)/4 vanishes: in d = 3 waves cross the axis carrying
    // u(t,0)^2, while above three dimensions the u^2/r^3 bulk channel
    // does the origin bookkeeping and the measure of any resolved field
    // is zero.
    axis_.t.push_back(t);
    axis_.value.push_back(grid_.d == 3 ? origin_amplitude(state.u) : 0.0);
  }

  const bool stride_step =
      step % config_.stride == 0 || step == planned_steps_;

  std::unique_ptr<StepArrays> arrays;
  if (need_arrays_ || (stride_step && (!interiors_.empty() || !norms_.empty())))
    arrays = std::make_unique<StepArrays>(state, grid_, centers_, params_.p());

  if (config_.energies && stride_step) record_energy(state);

  if (config_.global_morawetz && arrays) {
    global_m_.t.push_back(t);
    global_m_.value.push_back(radial_integral(arrays->mden, qw_));
    global_n_.t.push_back(t);
    global_n_.value.push_back(radial_integral(arrays->ext_den, qw_));
  }

  const double r_domain = grid_.r_max();

  for (RegionTrace& trace : regions_) {
    for (SegmentTrace& st : trace.segments) {
      const SurfaceSegment& seg = st.segment;
      switch (seg.kind) {
        case SegmentKind::horizontal_up:
        case SegmentKind::horizontal_down:
          break;  // handled by capture_horizontal below
        case SegmentKind::axis:
          break;  // assembled from the axis trace
        case SegmentKind::cylinder_outward:
        case SegmentKind::cylinder_inward: {
          const double r0 = seg.r_begin;
          const double scale =
              sphere_area(grid_.d) * std::pow(r0, grid_.d - 1);
          const double lp = sample_linear(arrays->lplus_sq, grid_, r0);
          const double lm = sample_linear(arrays->lminus_sq, grid_, r0);
          const double ep = sample_linear(arrays->e_prime, grid_, r0);
          st.inward_series.t.push_back(t);
          st.inward_series.value.push_back(scale * (-0.25 * lp + 0.5 * ep));
          st.outward_series.t.push_back(t);
          st.outward_series.value.push_back(scale * (0.25 * lm - 0.5 * ep));
          break;
        }
        case SegmentKind::backward_cone_up:
        case SegmentKind::backward_cone_down:
        case SegmentKind::forward_cone_up:
        case SegmentKind::forward_cone_down: {
          const bool forward = seg.kind == SegmentKind::forward_cone_up ||
                               seg.kind == SegmentKind::forward_cone_down;
          const double offset = forward ? seg.t_begin - seg.r_begin
                                        : seg.t_begin + seg.r_begin;
          const double rc = forward ? t - offset : offset - t;
          double g_in = 0.0, g_out = 0.0;
          if (rc > 0.0 && rc < r_domain) {
            const double scale =
                sphere_area(grid_.d) * std::pow(rc, grid_.d - 1);
            const double ep = sample_linear(arrays->e_prime, grid_, rc);
            if (forward) {
              const double lp = sample_linear(arrays->lplus_sq, grid_, rc);
              g_in = scale * 0.5 * lp;
              g_out = scale * ep;
            } else {
              const double lm = sample_linear(arrays->lminus_sq, grid_, rc);
              g_in = scale * ep;
              g_out = scale * 0.5 * lm;
            }
          }
          st.inward_series.t.push_back(t);
          st.inward_series.value.push_back(g_in);
          st.outward_series.t.push_back(t);
          st.outward_series.value.push_back(g_out);
          break;
        }
      }
    }
    double bulk = 0.0;
    for (const auto& [r_lo, r_hi] : trace.region.slice(t))
      bulk += clipped_integral(arrays->mden, qw_, grid_, r_lo, r_hi);
    trace.bulk_series.t.push_back(t);
    trace.bulk_series.value.push_back(bulk);
  }
  if (!regions_.empty()) capture_horizontal(state);

  for (ConeTrace& cone : cones_) {
    const double rc = cone.forward ? t - cone.offset : cone.offset - t;
    double g_in = 0.0, g_out = 0.0;
    if (rc > 0.0 && rc < r_domain) {
      cone.intersects = true;
      const double scale = sphere_area(grid_.d) * std::pow(rc, grid_.d - 1);
      const double ep = sample_linear(arrays->e_prime, grid_, rc);
      if (cone.forward) {
        const double lp = sample_linear(arrays->lplus_sq, grid_, rc);
        g_in = scale * 0.5 * lp;
        g_out = scale * ep;
      } else {
        const double lm = sample_linear(arrays->lminus_sq, grid_, rc);
        g_in = scale * ep;
        g_out = scale * 0.5 * lm;
      }
    }
    cone.inward_series.t.push_back(t);
    cone.inward_series.value.push_back(g_in);
    cone.outward_series.t.push_back(t);
    cone.outward_series.value.push_back(g_out);
  }

  for (RadiusTrace& trace : radii_) {
    const double R = trace.radius;
    trace.quad_interior.t.push_back(t);
    trace.quad_interior.value.push_back(clipped_integral(
        (arrays->dudr.square() + state.v.square()).eval(), qw_, grid_, 0.0,
        R));
    trace.pot_interior.t.push_back(t);
    trace.pot_interior.value.push_back(
        clipped_integral(arrays->pot, qw_, grid_, 0.0, R));
    const double u_at_R = sample_linear(state.u, grid_, R);
    trace.sphere.t.push_back(t);
    trace.sphere.value.push_back(sphere_area(grid_.d) *
                                 std::pow(R, grid_.d - 1) * u_at_R * u_at_R);
    trace.ext_hardy.t.push_back(t);
    trace.ext_hardy.value.push_back(
        clipped_integral(arrays->ext_hardy_den, qw_, grid_, R, r_domain));
    trace.ext_pot.t.push_back(t);
    trace.ext_pot.value.push_back(
        clipped_integral(arrays->ext_pot_den, qw_, grid_, R, r_domain));
  }

  if (!weights_.empty()) {
    for (WeightTrace& trace : weights_) {
      const WeightSpec& w = trace.weight;
      Eigen::ArrayXd a(grid_.n);
      if (w.kind == WeightSpec::Kind::power) {
        a = (centers_ + t).pow(w.kappa);
      } else {
        for (Eigen::Index j = 0; j < grid_.n; ++j)
          a(j) = w(centers_(j) + t);
      }
      if (w.gamma == 1.0) a *= t / (centers_ + t);
      trace.bulk.t.push_back(t);
      trace.bulk.value.push_back(
          radial_integral((a * arrays->ext_den).eval(), qw_));
    }
  }

  if (stride_step) {
    for (InteriorTrace& trace : interiors_) {
      trace.series.t.push_back(t);
      trace.series.value.push_back(
          t <= 0.0 ? 0.0
                   : clipped_integral(arrays->e_full, qw_, grid_, 0.0,
                                      trace.speed * t));
    }
    for (NormTrace& trace : norms_) {
      trace.series.t.push_back(t);
      trace.series.value.push_back(
          radial_integral(abs_power(state.u, trace.exponent), qw_));
    }
  }

  for (size_t i = 0; i < snapshot_steps_.size(); ++i)
    if (snapshot_steps_[i] == step) snapshots_[i].state = state;

  prev_state_ = state;
  last_state_ = state;
}

void RunDiagnostics::capture_horizontal(const FieldState& state) {
  const double t = state.t;
  for (RegionTrace& trace : regions_) {
    for (SegmentTrace& st : trace.segments) {
      const SurfaceSegment& seg = st.segment;
      if (st.captured || (seg.kind != SegmentKind::horizontal_up &&
                          seg.kind != SegmentKind::horizontal_down))
        continue;
      const double ts = seg.t_begin;
      const bool first_step = prev_state_.u.size() == 0 || prev_state_.t >= t;
      const double sign = seg.kind == SegmentKind::horizontal_up ? 1.0 : -1.0;

      auto eval = [&](const FieldState& at, double& in_val, double& out_val) {
        const StepArrays arrays(at, grid_, centers_, params_.p());
        in_val = clipped_integral(
            (0.25 * arrays.lplus_sq + 0.5 * arrays.e_prime).eval(), qw_,
            grid_, seg.r_lo(), seg.r_hi());
        out_val = clipped_integral(
            (0.25 * arrays.lminus_sq + 0.5 * arrays.e_prime).eval(), qw_,
            grid_, seg.r_lo(), seg.r_hi());
      };

      if (std::abs(t - ts) <= kTimeTol) {
        double in_val, out_val;
        eval(state, in_val, out_val);
        st.inward = sign * in_val;
        st.outward = sign * out_val;
        st.captured = true;
      } else if (!first_step && prev_state_.t < ts && ts < t) {
        double in0, out0, in1, out1;
        eval(prev_state_, in0, out0);
        eval(state, in1, out1);
        const double theta = (ts - prev_state_.t) / (t - prev_state_.t);
        st.inward = sign * ((1.0 - theta) * in0 + theta * in1);
        st.outward = sign * ((1.0 - theta) * out0 + theta * out1);
        st.captured = true;
      }
    }
  }
}

}  // namespace radwave
