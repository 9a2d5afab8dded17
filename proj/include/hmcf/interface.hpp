#pragma once

#include <optional>
#include <vector>

#include "hmcf/geometry.hpp"

namespace hmcf {

/// Closed, simple, counterclockwise polyline (last point joins the first).
class Curve {
 public:
  /// Validates >= 8 points, distinct consecutive points, simplicity and
  /// positive signed area.
  explicit Curve(std::vector<Vec2> points);

  /// Regular n-gon inscribed in the circle of radius r about `center`.
  static Curve circle(double r, int n, Vec2 center = {0.0, 0.0});
  /// Ellipse with semi-axes (a, b), vertices uniform in the angle parameter.
  static Curve ellipse(double a, double b, int n);

  const std::vector<Vec2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Vec2& operator[](std::size_t k) const { return points_[k]; }

  double signed_area() const;
  double perimeter() const;
  double min_segment() const;
  Vec2 centroid() const;
  /// Mean distance of the vertices from the area centroid.
  double mean_radius() const;
  /// max |r_k - mean| over vertices, radii about the area centroid.
  double radius_spread() const;

 private:
  std::vector<Vec2> points_;
};

double polygon_signed_area(const std::vector<Vec2>& pts);

/// Contour h = level of the field by marching squares, oriented
/// counterclockwise around the sub-level set {h <= level}. Returns nullopt
/// when the sub-level set is empty or degenerate (a contour with fewer than 8
/// vertices, e.g. a single touching node). Throws MultipleInterfaces for more
/// than one closed contour and OpenInterface when the contour leaves the
/// domain.
std::optional<Curve> extract_interface(const HeightField& field, double level);

/// (3 dx)^2: the lowest level whose contour is clear of the thin positive
/// layer an explicit scheme leaves around the flat side.
double edge_level(const HeightField& field);

/// Radius of the flat side corrected for the thin positive layer an explicit
/// scheme leaves just outside it: with r(l) the area radius sqrt(area / pi)
/// of the contour h = l, returns max(2 r(l) - r(4 l), 0). Near a flat edge
/// h grows like d^2, so sqrt(h) is linear in distance and the combination
/// extrapolates to l = 0. `level` <= 0 selects l = edge_level(field). nullopt when no
/// contour exists at l.
std::optional<double> flat_radius_estimate(const HeightField& field, double level = 0.0);

/// Discrete curvature at each vertex from the circle through the vertex and
/// its two neighbours; positive for a left (convex) turn.
std::vector<double> discrete_curvature(const Curve& curve);

struct CsfStepResult {
  Curve curve;
  bool extinct = false;
};

/// One explicit curve-shortening step: every vertex moves by k * dt along the
/// inward normal. Requires 0 < dt <= 0.25 * min_segment^2. When the result
/// can no longer carry 8 vertices with positive area the input curve is
/// returned with extinct = true.
CsfStepResult csf_step(const Curve& curve, double dt);

/// Resample to n points equally spaced in arc length on a periodic
/// Catmull-Rom spline through the vertices.
Curve resample_uniform(const Curve& curve, int n);

/// Explicit CSF integration with arc-length resampling every
/// `resample_every` steps.
class CsfIntegrator {
 public:
  explicit CsfIntegrator(Curve initial, int resample_every = 10);

  /// Advances to time t_target with dt <= dt_max (and the stability bound).
  /// Returns false if the curve went extinct first.
  bool advance_to(double t_target, double dt_max);

  const Curve& curve() const { return curve_; }
  double time() const { return t_; }
  long steps() const { return steps_; }
  bool extinct() const { return extinct_; }

 private:
  Curve curve_;
  int resample_every_;
  double t_ = 0.0;
  long steps_ = 0;
  bool extinct_ = false;
};

/// Symmetric Hausdorff distance between the two polylines (vertices and
/// segment midpoints of each against the segments of the other).
double curve_distance(const Curve& a, const Curve& b);

}  // namespace hmcf
