#include "hmcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "hmcf/error.hpp"

namespace hmcf {

GridSpec GridSpec::centered_square(int n, double half_width) {
  GridSpec g;
  g.nx = n;
  g.ny = n;
  g.dx = 2.0 * half_width / (n - 1);
  g.dy = g.dx;
  g.x0 = -half_width;
  g.y0 = -half_width;
  return g;
}

namespace {

// Labels 4-connected components of the mask; returns the component count and
// whether any component touches the grid border.
struct Components {
  int count = 0;
  std::vector<bool> touches_border;
};

Components label_components(const std::vector<bool>& mask, int nx, int ny) {
  Components out;
  std::vector<int> label(mask.size(), -1);
  std::deque<int> queue;
  for (int start = 0; start < nx * ny; ++start) {
    if (!mask[start] || label[start] >= 0) continue;
    const int id = out.count++;
    bool border = false;
    label[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const int k = queue.front();
      queue.pop_front();
      const int i = k / ny;
      const int j = k % ny;
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) border = true;
      const int nbr[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& n : nbr) {
        if (n[0] < 0 || n[1] < 0 || n[0] >= nx || n[1] >= ny) continue;
        const int m = n[0] * ny + n[1];
        if (mask[m] && label[m] < 0) {
          label[m] = id;
          queue.push_back(m);
        }
      }
    }
    out.touches_border.push_back(border);
  }
  return out;
}

}  // namespace

HeightField::HeightField(GridSpec grid, std::vector<double> values,
                         double flat_tol)
    : grid_(grid), values_(std::move(values)), flat_tol_(flat_tol) {
  if (!(grid_.dx > 0.0) || !(grid_.dy > 0.0))
    fail(ErrorCode::InvalidArgument, "grid spacings must be positive");
  if (grid_.nx < 5 || grid_.ny < 5)
    fail(ErrorCode::InvalidArgument, "grid must have at least 5x5 nodes");
  if (values_.size() != static_cast<std::size_t>(grid_.nx) * grid_.ny)
    fail(ErrorCode::GridMismatch, "value count does not match grid");
  if (!(flat_tol_ > 0.0))
    fail(ErrorCode::InvalidArgument, "flat_tol must be positive");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(ErrorCode::InvalidArgument,
           "height values must be finite and non-negative");
  }
  if (flat_components() > 1)
    fail(ErrorCode::MultipleInterfaces, "flat set has more than one component");
  // A hole in the flat set is a component of its complement that does not
  // reach the border.
  std::vector<bool> raised(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k)
    raised[k] = values_[k] >= flat_tol_;
  if (flat_components() == 1) {
    const auto comp = label_components(raised, grid_.nx, grid_.ny);
    for (bool b : comp.touches_border) {
      if (!b)
        fail(ErrorCode::InvalidArgument, "flat set is not simply connected");
    }
  }
}

HeightField HeightField::sample(GridSpec grid, double flat_tol,
                                const std::function<double(double, double)>& h) {
  std::vector<double> v(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      v[static_cast<std::size_t>(i) * grid.ny + j] = h(grid.x(i), grid.y(j));
  return HeightField(grid, std::move(v), flat_tol);
}

int HeightField::flat_components() const {
  std::vector<bool> flat(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k)
    flat[k] = values_[k] < flat_tol_;
  return label_components(flat, grid_.nx, grid_.ny).count;
}

double HeightField::flat_area() const {
  const auto n = std::count_if(values_.begin(), values_.end(),
                               [&](double v) { return v < flat_tol_; });
  return static_cast<double>(n) * grid_.dx * grid_.dy;
}

HeightField HeightField::with_values(std::vector<double> values) const {
  return HeightField(grid_, std::move(values), flat_tol_);
}

std::array<double, 2> Sym2::eigenvalues() const {
  const double mean = 0.5 * (xx + yy);
  const double half_diff = 0.5 * (xx - yy);
  const double r = std::hypot(half_diff, xy);
  return {mean - r, mean + r};
}

namespace {

// First-derivative stencil along one axis at index k of n nodes.
struct Stencil3 {
  int offset[3];
  double weight[3];
};

Stencil3 first_derivative(int k, int n, double h) {
  if (k == 0) return {{0, 1, 2}, {-1.5 / h, 2.0 / h, -0.5 / h}};
  if (k == n - 1) return {{0, -1, -2}, {1.5 / h, -2.0 / h, 0.5 / h}};
  return {{-1, 0, 1}, {-0.5 / h, 0.0, 0.5 / h}};
}

double second_derivative(const HeightField& f, int i, int j, bool along_x) {
  const int n = along_x ? f.nx() : f.ny();
  const int k = along_x ? i : j;
  const double h = along_x ? f.dx() : f.dy();
  auto at = [&](int off) { return along_x ? f(i + off, j) : f(i, j + off); };
  if (k == 0)
    return (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
  if (k == n - 1)
    return (2.0 * at(0) - 5.0 * at(-1) + 4.0 * at(-2) - at(-3)) / (h * h);
  return (at(-1) - 2.0 * at(0) + at(1)) / (h * h);
}

}  // namespace

Derivatives derivatives_at(const HeightField& f, int i, int j) {
  if (i < 0 || j < 0 || i >= f.nx() || j >= f.ny())
    fail(ErrorCode::Stencil, "node outside grid");
  const Stencil3 sx = first_derivative(i, f.nx(), f.dx());
  const Stencil3 sy = first_derivative(j, f.ny(), f.dy());
  Derivatives d;
  for (int a = 0; a < 3; ++a) {
    d.gradient[0] += sx.weight[a] * f(i + sx.offset[a], j);
    d.gradient[1] += sy.weight[a] * f(i, j + sy.offset[a]);
  }
  for (int a = 0; a < 3; ++a) {
    if (sx.weight[a] == 0.0) continue;
    for (int b = 0; b < 3; ++b) {
      if (sy.weight[b] == 0.0) continue;
      d.hessian.xy +=
          sx.weight[a] * sy.weight[b] * f(i + sx.offset[a], j + sy.offset[b]);
    }
  }
  d.hessian.xx = second_derivative(f, i, j, true);
  d.hessian.yy = second_derivative(f, i, j, false);
  return d;
}

Derivatives hessian_and_gradient(const HeightField& f, int i, int j) {
  if (i < 1 || j < 1 || i > f.nx() - 2 || j > f.ny() - 2)
    fail(ErrorCode::Stencil, "node (" + std::to_string(i) + ", " +
                                 std::to_string(j) +
                                 ") outside centred stencil range");
  return derivatives_at(f, i, j);
}

CurvaturePair principal_curvatures(const Vec2& g, const Sym2& hess) {
  const double p = g[0];
  const double q = g[1];
  const double w2 = 1.0 + p * p + q * q;
  const double K = hess.det() / (w2 * w2);
  const double H = ((1.0 + q * q) * hess.xx - 2.0 * p * q * hess.xy +
                    (1.0 + p * p) * hess.yy) /
                   (w2 * std::sqrt(w2));
  const double disc = std::max(0.25 * H * H - K, 0.0);
  const double r = std::sqrt(disc);
  CurvaturePair out;
  out.lambda1 = 0.5 * H - r;
  out.lambda2 = 0.5 * H + r;
  out.K = out.lambda1 * out.lambda2;
  out.H = out.lambda1 + out.lambda2;
  return out;
}

CurvatureTolerances CurvatureTolerances::for_spacing(double dx) {
  return {1e-12 / dx, 1e-8 / dx};
}

double harmonic_mean_velocity(const CurvaturePair& pair,
                              const CurvatureTolerances& tol) {
  if (pair.lambda1 < -tol.clamp_tol)
    fail(ErrorCode::Convexity, "principal curvature " +
                                   std::to_string(pair.lambda1) +
                                   " below -clamp_tol: surface left the "
                                   "weakly convex class");
  const double l1 = std::max(pair.lambda1, 0.0);
  const double l2 = std::max(pair.lambda2, 0.0);
  const double H = l1 + l2;
  if (H <= tol.h_floor) return 0.0;
  return l1 * l2 / H;
}

double sphere_height(double R, double x, double y, double cx, double cy) {
  const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
  if (r2 >= R * R) return R;
  return R - std::sqrt(R * R - r2);
}

double flat_disk_height(double r0, double q, double x, double y) {
  const double d = std::hypot(x, y) - r0;
  return d > 0.0 ? std::pow(d, q) : 0.0;
}

}  // namespace hmcf
