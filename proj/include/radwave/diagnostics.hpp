#pragma once
/// One-pass run diagnostics.  RunDiagnostics is a composite Recorder that
/// captures, online, every trace the flux, estimates and scattering
/// operators need: scalar time series, the origin amplitude, per-segment
/// boundary integrands, cone crossings and a handful of snapshots.  Memory
/// stays O(n + steps); no space-time array is ever stored.

#include <vector>

#include "radwave/energy.hpp"
#include "radwave/region.hpp"
#include "radwave/solver.hpp"
#include "radwave/weights.hpp"

namespace radwave {

struct EnergyRecord {
  double t = 0.0;
  double total = 0.0;
  double inward = 0.0;
  double outward = 0.0;
  double kinetic = 0.0;
  double radial_gradient = 0.0;
  double potential = 0.0;
  double hardy = 0.0;
};

/// Scalar samples on the step lattice; integrated as a piecewise-linear
/// interpolant, so interval sums are exactly additive.
struct ScalarSeries {
  std::vector<double> t;
  std::vector<double> value;
};

/// Integral of the piecewise-linear interpolant over [a, b] clipped to the
/// sampled span.
double integrate_series(const ScalarSeries& series, double a, double b);

/// Largest sampled value in [a, b].
double max_series(const ScalarSeries& series, double a, double b);

struct DiagnosticsConfig {
  long stride = 10;
  bool energies = true;
  bool axis_trace = true;
  bool global_morawetz = false;
  std::vector<Region> regions;
  std::vector<double> forward_cone_offsets;   // tau with t - r = tau
  std::vector<double> backward_cone_offsets;  // s with t + r = s
  std::vector<double> morawetz_radii;
  std::vector<WeightSpec> weights;
  std::vector<double> interior_speeds;
  std::vector<double> snapshot_times;
  std::vector<double> norm_exponents;  // spatial L^r exponents to trace
};

struct SegmentTrace {
  SurfaceSegment segment;
  bool is_axis = false;
  bool captured = false;  // horizontal capture done
  double inward = 0.0;    // signed values for horizontal segments
  double outward = 0.0;
  ScalarSeries inward_series;  // unsigned integrands for cylinders and cones
  ScalarSeries outward_series;
};

struct RegionTrace {
  Region region;
  std::vector<SegmentTrace> segments;
  ScalarSeries bulk_series;  // slice integral of the Morawetz density
};

struct ConeTrace {
  bool forward = false;  // else backward
  double offset = 0.0;   // tau or s
  bool intersects = false;
  ScalarSeries inward_series;
  ScalarSeries outward_series;
};

struct RadiusTrace {
  double radius = 0.0;
  ScalarSeries quad_interior;  // omega int_{r<R} (u_r^2 + v^2)
  ScalarSeries pot_interior;   // omega int_{r<R} |u|^{p+1}
  ScalarSeries sphere;         // omega R^{d-1} u(R)^2
  ScalarSeries ext_hardy;      // omega int_{r>R} lambda u^2/r^3
  ScalarSeries ext_pot;        // omega int_{r>R} |u|^{p+1}/r
};

struct WeightTrace {
  WeightSpec weight;
  ScalarSeries bulk;  // weighted full-space bulk integrand
};

struct InteriorTrace {
  double speed = 0.0;
  ScalarSeries series;  // energy inside r < speed * t, on the stride lattice
};

struct NormTrace {
  double exponent = 0.0;
  ScalarSeries series;  // omega int |u|^r r^{d-1} dr, on the stride lattice
};

struct Snapshot {
  double requested_t = 0.0;
  FieldState state;
};

class RunDiagnostics : public Recorder {
 public:
  RunDiagnostics(const RadialGrid& grid, const ModelParams& params,
                 const SolverConfig& solver, DiagnosticsConfig config);

  void observe(const FieldState& state, long step) override;

  const RadialGrid& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  double dt() const { return dt_; }
  double cfl() const { return cfl_; }
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  double initial_energy() const { return initial_energy_; }
  const FieldState& initial_state() const { return initial_state_; }
  const FieldState& final_state() const { return last_state_; }

  const std::vector<EnergyRecord>& energy_series() const { return energy_; }
  /// Origin amplitude (parabolic extrapolation from the first two cells).
  const ScalarSeries& axis_amplitude() const { return axis_; }
  const ScalarSeries& global_morawetz_series() const { return global_m_; }
  const ScalarSeries& global_bulk_series() const { return global_n_; }
  const std::vector<RegionTrace>& region_traces() const { return regions_; }
  const std::vector<ConeTrace>& cone_traces() const { return cones_; }
  const std::vector<RadiusTrace>& radius_traces() const { return radii_; }
  const std::vector<WeightTrace>& weight_traces() const { return weights_; }
  const std::vector<InteriorTrace>& interior_traces() const {
    return interiors_;
  }
  const std::vector<NormTrace>& norm_traces() const { return norms_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const DiagnosticsConfig& config() const { return config_; }

 private:
  struct StepArrays;
  void capture_horizontal(const FieldState& state);
  void record_energy(const FieldState& state);

  RadialGrid grid_;
  ModelParams params_;
  DiagnosticsConfig config_;
  double dt_ = 0.0, cfl_ = 0.8, t_final_ = 0.0;
  double t_begin_ = 0.0, t_end_ = 0.0;
  long planned_steps_ = 0;
  bool need_arrays_ = false;

  Eigen::ArrayXd qw_;       // quadrature weights
  Eigen::ArrayXd centers_;  // cell radii
  double initial_energy_ = 0.0;
  FieldState initial_state_;
  FieldState prev_state_;
  FieldState last_state_;

  std::vector<EnergyRecord> energy_;
  ScalarSeries axis_;
  ScalarSeries global_m_;
  ScalarSeries global_n_;
  std::vector<RegionTrace> regions_;
  std::vector<ConeTrace> cones_;
  std::vector<RadiusTrace> radii_;
  std::vector<WeightTrace> weights_;
  std::vector<InteriorTrace> interiors_;
  std::vector<NormTrace> norms_;
  std::vector<Snapshot> snapshots_;
  std::vector<long> snapshot_steps_;
};

}  // namespace radwave
