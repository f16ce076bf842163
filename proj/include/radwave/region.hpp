#pragma once
/// Closed polygonal space-time regions in the half-plane r >= 0 whose edges
/// are horizontal, vertical (cylinder or axis) or 45-degree cone segments.
/// Loops are stored counterclockwise so each edge's outward normal is its
/// direction rotated by -90 degrees; edge kinds encode that orientation.

#include <string>
#include <utility>
#include <vector>

namespace radwave {

enum class SegmentKind {
  horizontal_up,
  horizontal_down,
  cylinder_outward,
  cylinder_inward,
  axis,
  backward_cone_up,
  backward_cone_down,
  forward_cone_up,
  forward_cone_down,
};

const char* to_string(SegmentKind kind);

struct SurfaceSegment {
  SegmentKind kind = SegmentKind::axis;
  // Endpoints in traversal order.
  double r_begin = 0.0, t_begin = 0.0;
  double r_end = 0.0, t_end = 0.0;

  double t_lo() const { return t_begin < t_end ? t_begin : t_end; }
  double t_hi() const { return t_begin < t_end ? t_end : t_begin; }
  double r_lo() const { return r_begin < r_end ? r_begin : r_end; }
  double r_hi() const { return r_begin < r_end ? r_end : r_begin; }
  bool matches(const SurfaceSegment& other, double tol = 1e-12) const;
};

class Region {
 public:
  Region() = default;

  /// Builds from an ordered vertex loop (r, t); the loop is closed
  /// implicitly, reoriented counterclockwise if needed, and each edge must
  /// classify as one of the segment kinds.  Throws std::invalid_argument on
  /// malformed input (negative r, unclassifiable or crossing edges).
  static Region from_vertices(std::string id,
                              std::vector<std::pair<double, double>> loop);

  const std::string& id() const { return id_; }
  const std::vector<SurfaceSegment>& segments() const { return segments_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  bool touches_axis() const;

  /// Radial cross-section {r : (r, t) in region} as disjoint intervals.
  /// Queries at the extreme times return the one-sided interior limit.
  std::vector<std::pair<double, double>> slice(double t) const;

  bool same_geometry(const Region& other, double tol = 1e-12) const;

 private:
  std::string id_;
  std::vector<std::pair<double, double>> loop_;
  std::vector<SurfaceSegment> segments_;
  std::vector<double> vertex_times_;
  double t_min_ = 0.0, t_max_ = 0.0, r_min_ = 0.0, r_max_ = 0.0;
};

}  // namespace radwave
