#include "radwave/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace radwave {

namespace {

constexpr double kGeomTol = 1e-9;

double shoelace(const std::vector<std::pair<double, double>>& loop) {
  double twice_area = 0.0;
  const size_t m = loop.size();
  for (size_t i = 0; i < m; ++i) {
    const auto& [r0, t0] = loop[i];
    const auto& [r1, t1] = loop[(i + 1) % m];
    twice_area += r0 * t1 - r1 * t0;
  }
  return 0.5 * twice_area;
}

SegmentKind classify(double r0, double t0, double r1, double t1) {
  const double dr = r1 - r0;
  const double dt = t1 - t0;
  if (std::abs(dt) <= kGeomTol) {
    if (std::abs(dr) <= kGeomTol)
      throw std::invalid_argument("region edge has zero length");
    return dr < 0.0 ? SegmentKind::horizontal_up : SegmentKind::horizontal_down;
  }
  if (std::abs(dr) <= kGeomTol) {
    if (r0 <= kGeomTol) return SegmentKind::axis;
    return dt > 0.0 ? SegmentKind::cylinder_outward
                    : SegmentKind::cylinder_inward;
  }
  if (std::abs(dr + dt) <= kGeomTol)  // r + t constant
    return dt > 0.0 ? SegmentKind::backward_cone_up
                    : SegmentKind::backward_cone_down;
  if (std::abs(dr - dt) <= kGeomTol)  // t - r constant
    return dt > 0.0 ? SegmentKind::forward_cone_up
                    : SegmentKind::forward_cone_down;
  std::ostringstream msg;
  msg << "region edge (" << r0 << ", " << t0 << ") -> (" << r1 << ", " << t1
      << ") is neither horizontal, vertical nor a 45-degree cone";
  throw std::invalid_argument(msg.str());
}

// Proper-crossing test for two open segments (shared endpoints allowed).
bool segments_cross(const std::pair<double, double>& a0,
                    const std::pair<double, double>& a1,
                    const std::pair<double, double>& b0,
                    const std::pair<double, double>& b1) {
  auto orient = [](const std::pair<double, double>& p,
                   const std::pair<double, double>& q,
                   const std::pair<double, double>& r) {
    const double v = (q.first - p.first) * (r.second - p.second) -
                     (q.second - p.second) * (r.first - p.first);
    if (v > kGeomTol) return 1;
    if (v < -kGeomTol) return -1;
    return 0;
  };
  const int o1 = orient(a0, a1, b0);
  const int o2 = orient(a0, a1, b1);
  const int o3 = orient(b0, b1, a0);
  const int o4 = orient(b0, b1, a1);
  return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

}  // namespace

const char* to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::horizontal_up: return "horizontal-up";
    case SegmentKind::horizontal_down: return "horizontal-down";
    case SegmentKind::cylinder_outward: return "cylinder-outward";
    case SegmentKind::cylinder_inward: return "cylinder-inward";
    case SegmentKind::axis: return "axis";
    case SegmentKind::backward_cone_up: return "backward-cone-up";
    case SegmentKind::backward_cone_down: return "backward-cone-down";
    case SegmentKind::forward_cone_up: return "forward-cone-up";
    case SegmentKind::forward_cone_down: return "forward-cone-down";
  }
  return "?";
}

bool SurfaceSegment::matches(const SurfaceSegment& other, double tol) const {
  return kind == other.kind && std::abs(r_begin - other.r_begin) <= tol &&
         std::abs(t_begin - other.t_begin) <= tol &&
         std::abs(r_end - other.r_end) <= tol &&
         std::abs(t_end - other.t_end) <= tol;
}

Region Region::from_vertices(std::string id,
                             std::vector<std::pair<double, double>> loop) {
  if (!loop.empty() && std::abs(loop.front().first - loop.back().first) <= kGeomTol &&
      std::abs(loop.front().second - loop.back().second) <= kGeomTol)
    loop.pop_back();
  if (loop.size() < 3)
    throw std::invalid_argument("region needs at least 3 distinct vertices");
  for (const auto& [r, t] : loop)
    if (r < -kGeomTol)
      throw std::invalid_argument("region vertex has negative radius");
  for (auto& [r, t] : loop)
    if (std::abs(r) <= kGeomTol) r = 0.0;

  if (shoelace(loop) < 0.0) std::reverse(loop.begin(), loop.end());
  // Canonical start vertex, so equal geometries produce equal segment lists
  // regardless of how the caller ordered the loop.
  std::rotate(loop.begin(),
              std::min_element(loop.begin(), loop.end(),
                               [](const auto& a, const auto& b) {
                                 return std::tie(a.second, a.first) <
                                        std::tie(b.second, b.first);
                               }),
              loop.end());

  Region region;
  region.id_ = std::move(id);
  const size_t m = loop.size();
  for (size_t i = 0; i < m; ++i) {
    const auto& [r0, t0] = loop[i];
    const auto& [r1, t1] = loop[(i + 1) % m];
    SurfaceSegment seg;
    seg.kind = classify(r0, t0, r1, t1);
    seg.r_begin = r0;
    seg.t_begin = t0;
    seg.r_end = r1;
    seg.t_end = t1;
    region.segments_.push_back(seg);
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (segments_cross(loop[i], loop[(i + 1) % m], loop[j],
                         loop[(j + 1) % m]))
        throw std::invalid_argument("region boundary crosses itself");

  region.loop_ = std::move(loop);
  region.t_min_ = region.t_max_ = region.loop_[0].second;
  region.r_min_ = region.r_max_ = region.loop_[0].first;
  for (const auto& [r, t] : region.loop_) {
    region.t_min_ = std::min(region.t_min_, t);
    region.t_max_ = std::max(region.t_max_, t);
    region.r_min_ = std::min(region.r_min_, r);
    region.r_max_ = std::max(region.r_max_, r);
    region.vertex_times_.push_back(t);
  }
  std::sort(region.vertex_times_.begin(), region.vertex_times_.end());
  return region;
}

bool Region::touches_axis() const {
  for (const auto& seg : segments_)
    if (seg.kind == SegmentKind::axis) return true;
  return false;
}

std::vector<std::pair<double, double>> Region::slice(double t) const {
  std::vector<std::pair<double, double>> out;
  if (t < t_min_ || t > t_max_) return out;
  // Nudge off vertex times so every crossing is transversal; the one-sided
  // limit is what time quadrature needs at the extremes.
  const double tiny = std::max(1e-12, 1e-9 * (t_max_ - t_min_));
  double tq = std::clamp(t, t_min_ + tiny, t_max_ - tiny);
  for (double tv : vertex_times_)
    if (std::abs(tq - tv) < tiny) tq = tv + tiny;

  std::vector<double> crossings;
  const size_t m = loop_.size();
  for (size_t i = 0; i < m; ++i) {
    const auto& [r0, t0] = loop_[i];
    const auto& [r1, t1] = loop_[(i + 1) % m];
    if (std::abs(t1 - t0) <= kGeomTol) continue;
    const double lo = std::min(t0, t1);
    const double hi = std::max(t0, t1);
    if (tq <= lo || tq >= hi) continue;
    crossings.push_back(r0 + (r1 - r0) * (tq - t0) / (t1 - t0));
  }
  std::sort(crossings.begin(), crossings.end());
  if (crossings.size() % 2 != 0)
    throw std::logic_error("region slice produced an odd crossing count");
  for (size_t i = 0; i + 1 < crossings.size(); i += 2)
    out.emplace_back(std::max(0.0, crossings[i]), crossings[i + 1]);
  return out;
}

bool Region::same_geometry(const Region& other, double tol) const {
  if (segments_.size() != other.segments_.size()) return false;
  for (size_t i = 0; i < segments_.size(); ++i)
    if (!segments_[i].matches(other.segments_[i], tol)) return false;
  return true;
}

}  // namespace radwave
