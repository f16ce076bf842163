#include "radwave/flux.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radwave {

namespace {

[[noreturn]] void missing_segment(const SurfaceSegment& seg) {
  std::ostringstream msg;
  msg << "surface_integral: segment " << to_string(seg.kind) << " ("
      << seg.r_begin << ", " << seg.t_begin << ") -> (" << seg.r_end << ", "
      << seg.t_end << ") was not traced by the run diagnostics";
  throw std::invalid_argument(msg.str());
}

const RegionTrace& find_region(const Region& region,
                               const RunDiagnostics& diag) {
  for (const RegionTrace& trace : diag.region_traces())
    if (trace.region.same_geometry(region)) return trace;
  throw std::invalid_argument("region '" + region.id() +
                              "' was not registered with the run diagnostics");
}

double segment_sign(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::horizontal_up:
    case SegmentKind::cylinder_outward:
    case SegmentKind::backward_cone_up:
    case SegmentKind::forward_cone_up:
      return 1.0;
    default:
      return -1.0;
  }
}

double assemble_segment(const SegmentTrace& st, const RunDiagnostics& diag,
                        EnergyType type) {
  const SurfaceSegment& seg = st.segment;
  switch (seg.kind) {
    case SegmentKind::horizontal_up:
    case SegmentKind::horizontal_down:
      // Captures are stored pre-signed by traversal orientation.
      if (!st.captured) missing_segment(seg);
      return type == EnergyType::inward ? st.inward : st.outward;
    case SegmentKind::axis: {
      // The origin converts inward waves to outward ones: the axis feeds
      // +c_d mu into the inward ledger and -c_d mu into the outward one,
      // matching E_-(t) = c_d mu([t, T]) + bulk + E_-(T).
      const double mu = mu_accumulate(diag, seg.t_lo(), seg.t_hi());
      const double c = origin_flux_constant(diag.grid().d);
      return (type == EnergyType::inward ? 1.0 : -1.0) * c * mu;
    }
    case SegmentKind::cylinder_outward:
    case SegmentKind::cylinder_inward: {
      // Traced series hold the outward-normal integrand.
      const ScalarSeries& series = type == EnergyType::inward
                                       ? st.inward_series
                                       : st.outward_series;
      const double sign =
          seg.kind == SegmentKind::cylinder_outward ? 1.0 : -1.0;
      return sign * integrate_series(series, seg.t_lo(), seg.t_hi());
    }
    default: {
      // Cones; traced series hold the upward-normal integrand.
      const ScalarSeries& series = type == EnergyType::inward
                                       ? st.inward_series
                                       : st.outward_series;
      return segment_sign(seg.kind) *
             integrate_series(series, seg.t_lo(), seg.t_hi());
    }
  }
}

}  // namespace

const char* to_string(EnergyType type) {
  return type == EnergyType::inward ? "inward" : "outward";
}

double mu_accumulate(const RunDiagnostics& diag, double t_lo, double t_hi) {
  const ScalarSeries& amp = diag.axis_amplitude();
  if (amp.t.size() < 2)
    throw std::domain_error("mu_accumulate: axis trace was not recorded");
  const double tol = 10.0 * diag.dt();
  if (t_lo < amp.t.front() - tol || t_hi > amp.t.back() + tol)
    throw std::domain_error("mu_accumulate: interval outside the run span");
  ScalarSeries density;
  density.t = amp.t;
  density.value.reserve(amp.value.size());
  for (double a : amp.value) density.value.push_back(a * a);
  return integrate_series(density, t_lo, t_hi);
}

double surface_integral(const SurfaceSegment& segment,
                        const RunDiagnostics& diag, EnergyType type) {
  if (segment.kind == SegmentKind::axis) {
    const double mu = mu_accumulate(diag, segment.t_lo(), segment.t_hi());
    const double c = origin_flux_constant(diag.grid().d);
    return (type == EnergyType::inward ? 1.0 : -1.0) * c * mu;
  }
  for (const RegionTrace& trace : diag.region_traces())
    for (const SegmentTrace& st : trace.segments)
      if (st.segment.matches(segment)) return assemble_segment(st, diag, type);
  missing_segment(segment);
}

double morawetz_region_integral(const Region& region,
                                const RunDiagnostics& diag) {
  const RegionTrace& trace = find_region(region, diag);
  return integrate_series(trace.bulk_series, region.t_min(), region.t_max());
}

double global_morawetz_integral(const RunDiagnostics& diag, double t_lo,
                                double t_hi) {
  if (diag.global_morawetz_series().t.size() < 2)
    throw std::domain_error(
        "global_morawetz_integral: series was not recorded");
  return integrate_series(diag.global_morawetz_series(), t_lo, t_hi);
}

double global_bulk_integral(const RunDiagnostics& diag, double t_lo,
                            double t_hi) {
  if (diag.global_bulk_series().t.size() < 2)
    throw std::domain_error("global_bulk_integral: series was not recorded");
  return integrate_series(diag.global_bulk_series(), t_lo, t_hi);
}

FluxLedger flux_balance(const Region& region, const RunDiagnostics& diag,
                        EnergyType type) {
  const RegionTrace& trace = find_region(region, diag);
  FluxLedger ledger;
  ledger.region_id = region.id();
  ledger.type = type;
  double boundary_sum = 0.0;
  for (const SegmentTrace& st : trace.segments) {
    double value = 0.0;
    if (st.is_axis) {
      ledger.mu_term = assemble_segment(st, diag, type);
      boundary_sum += ledger.mu_term;
    } else {
      value = assemble_segment(st, diag, type);
      boundary_sum += value;
    }
    ledger.per_segment.emplace_back(st.segment, value);
  }
  ledger.morawetz_integral =
      integrate_series(trace.bulk_series, region.t_min(), region.t_max());
  // Inward ledgers satisfy sum = -bulk, outward ones sum = +bulk.
  ledger.residual = type == EnergyType::inward
                        ? boundary_sum + ledger.morawetz_integral
                        : boundary_sum - ledger.morawetz_integral;
  return ledger;
}

ConeFluxSeries cone_fluxes(const RunDiagnostics& diag) {
  ConeFluxSeries out;
  out.energy = diag.initial_energy();
  for (const ConeTrace& cone : diag.cone_traces()) {
    ConeFluxSeries::Entry entry;
    entry.forward = cone.forward;
    entry.offset = cone.offset;
    entry.intersects = cone.intersects;
    entry.q_inward =
        integrate_series(cone.inward_series, diag.t_begin(), diag.t_end());
    entry.q_outward =
        integrate_series(cone.outward_series, diag.t_begin(), diag.t_end());
    out.entries.push_back(entry);
  }
  return out;
}

}  // namespace radwave
