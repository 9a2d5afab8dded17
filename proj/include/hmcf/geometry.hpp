#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace hmcf {

/// Uniform node-centred grid. Node (i, j) sits at (x0 + i*dx, y0 + j*dy).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  bool operator==(const GridSpec&) const = default;

  /// Square grid of n x n nodes covering [-half_width, half_width]^2.
  static GridSpec centered_square(int n, double half_width);
};

/// Discretised lower graph z = h(x, y) >= 0 with (at most) one flat side.
class HeightField {
 public:
  /// Validates: dx, dy > 0, nx, ny >= 5, values >= 0, flat set simply
  /// connected (one component, no holes) or empty.
  HeightField(GridSpec grid, std::vector<double> values, double flat_tol);

  static HeightField sample(GridSpec grid, double flat_tol,
                            const std::function<double(double, double)>& h);

  const GridSpec& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }
  double dx() const { return grid_.dx; }
  double dy() const { return grid_.dy; }
  double flat_tol() const { return flat_tol_; }

  double operator()(int i, int j) const { return values_[index(i, j)]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * grid_.ny + j;
  }
  std::span<const double> values() const { return values_; }

  bool is_flat(int i, int j) const { return (*this)(i, j) < flat_tol_; }
  /// Number of 4-connected components of {h < flat_tol}.
  int flat_components() const;
  /// Area of the flat set, counted as dx*dy per flat node.
  double flat_area() const;

  /// Same grid and tolerance, new values (revalidated).
  HeightField with_values(std::vector<double> values) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  double flat_tol_;
};

using Vec2 = std::array<double, 2>;

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  /// Eigenvalues in ascending order.
  std::array<double, 2> eigenvalues() const;
};

struct Derivatives {
  Vec2 gradient{};
  Sym2 hessian{};
};

/// Centred second-order differences at an interior node, 1 <= i <= nx-2 and
/// 1 <= j <= ny-2; throws ErrorCode::Stencil otherwise.
Derivatives hessian_and_gradient(const HeightField& field, int i, int j);

/// Like hessian_and_gradient but valid at every node: the outermost ring
/// falls back to one-sided second-order stencils.
Derivatives derivatives_at(const HeightField& field, int i, int j);

struct CurvaturePair {
  double lambda1 = 0.0;  // smaller principal curvature
  double lambda2 = 0.0;
  double K = 0.0;  // lambda1 * lambda2
  double H = 0.0;  // lambda1 + lambda2
};

/// Eigenvalues of the shape operator of the graph z = h(x, y), upward
/// normal convention (a convex lower graph has non-negative curvatures).
CurvaturePair principal_curvatures(const Vec2& gradient, const Sym2& hessian);

struct CurvatureTolerances {
  double h_floor = 1e-12;    // H at or below this gives zero speed
  double clamp_tol = 1e-8;   // lambda1 in (-clamp_tol, 0) is clamped to 0

  /// Defaults scaled by the grid spacing: 1e-12/dx and 1e-8/dx.
  static CurvatureTolerances for_spacing(double dx);
};

/// Inward normal speed K/H = lambda1*lambda2/(lambda1+lambda2). Zero in the
/// degenerate limit H <= h_floor. Throws ErrorCode::Convexity when
/// lambda1 < -clamp_tol.
double harmonic_mean_velocity(const CurvaturePair& pair,
                              const CurvatureTolerances& tol = {});

/// Lower hemisphere of radius R touching z = 0 at (cx, cy), continued
/// outside the disk by its value on the rim so the field stays finite.
double sphere_height(double R, double x, double y, double cx = 0.0,
                     double cy = 0.0);

/// Rotational field ((rho - r0)_+)^q around the origin.
double flat_disk_height(double r0, double q, double x, double y);

}  // namespace hmcf
