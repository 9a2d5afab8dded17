#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hmcf/analysis.hpp"

namespace hmcf {

using Field3 = std::function<double(double, double, double)>;  // (z or w, y, t)
using Field2 = std::function<double(double, double)>;          // (y, t)

Field3 constant_field(double value);

/// Coefficients of
///   L f = f_t - (z^2 a11 f_zz + 2 z a12 f_zy + a22 f_yy + b1 z f_z + b2 f_y + c f)
/// as functions of (z, y, t).
struct ModelCoefficients {
  Field3 a11, a12, a22, b1, b2, c;
  double lambda_ell = 1.0;

  /// a11 = a22 = 1, everything else 0.
  static ModelCoefficients laplacian(double lambda_ell = 1.0);
  static ModelCoefficients constant(double a11, double a12, double a22, double b1,
                                    double b2, double c, double lambda_ell);
};

/// Smallest eigenvalue of [[a11, a12], [a12, a22]] over the given nodes;
/// ErrorCode::Ellipticity if it drops below lambda_ell (or lambda_ell <= 0).
double check_ellipticity(const ModelCoefficients& c, const std::vector<double>& z,
                         const std::vector<double>& y, const std::vector<double>& t);

/// {0, e^{w_min}, ..., e^{w_max}}: boundary row plus n log-uniform rows.
std::vector<double> log_uniform_z(double w_min, double w_max, std::size_t n);

/// Pointwise residual L f on a grid whose rows after z = 0 are log-uniform.
/// The z terms use z f_z = f_w, z^2 f_zz = f_ww - f_w, z f_zy = f_wy and vanish
/// on the boundary row. Centered differences inside, second-order one-sided
/// at the ends of every axis. ErrorCode::Stencil if an axis is too short or
/// the rows are not log-uniform.
HalfSpaceField apply_model_operator(const ModelCoefficients& coeffs,
                                    const HalfSpaceField& f);

/// Trace f° at z = 0 and its y derivatives, as functions of (y, t).
struct BoundaryTrace {
  Field2 f, f_y, f_yy;
};

enum class TransformVariant {
  Derived,  // from substituting f = f° + e^{pw} f~ into L
  Literal,  // b2^ = b2, c^ = e^{-p z}[p^2 a11 - 2p a12 + p b1], G^ without the c term
};

/// Coefficients of the operator acting on f~(w, y, t):
///   f~_t - (a11 f~_ww + 2 a12 f~_wy + a22 f~_yy + b1 f~_w + b2 f~_y + c f~) = phi~ + G
struct TransformedCoefficients {
  Field3 a11, a12, a22, b1, b2, c;
  Field3 G;  // zero when built without a boundary trace
  double p = 0.5;
  double lambda_ell = 1.0;
  TransformVariant variant = TransformVariant::Derived;
};

TransformedCoefficients transform_coefficients(const ModelCoefficients& coeffs, double p,
                                               const BoundaryTrace* trace = nullptr,
                                               TransformVariant variant =
                                                   TransformVariant::Derived);

/// The printed bracket p^2 a11 - 2p a12 + p b1.
double literal_c_bracket(double a11, double a12, double b1, double p);

/// Uniform periodic y grid: y_k = y0 + k * dy, k < n, period n * dy.
std::vector<double> periodic_grid(double y0, double period, std::size_t n);

/// Time-stepped solution on a spatial grid; values index kt * n_space + node.
struct Solution {
  std::vector<double> w;  // empty for boundary solutions
  std::vector<double> y;
  std::vector<double> t;
  std::vector<double> values;

  std::size_t n_space() const { return (w.empty() ? 1 : w.size()) * y.size(); }
  double at(std::size_t kt, std::size_t node) const { return values[kt * n_space() + node]; }
  std::vector<double> frame(std::size_t kt) const;
};

using StepObserver = std::function<void(double t, const std::vector<double>& u)>;

struct TimeStepping {
  double dt = 1e-3;
  double t_end = 0.0;
  int record_every = 1;
  /// With c <= 0 and zero forcing, throw ErrorCode::Ellipticity if a step
  /// leaves [min u0, max u0] by more than 1e-12 relative.
  bool check_max_principle = false;
  StepObserver observer;
};

/// Backward Euler for f°_t = a22° f°_yy + b2° f°_y + c° f° + phi° on a
/// periodic y grid, coefficients taken at z = 0. Factorisations are reused
/// while the assembled matrix does not change.
Solution solve_boundary_problem(const ModelCoefficients& coeffs,
                                const std::vector<double>& y,
                                const std::vector<double>& initial, const Field2& forcing,
                                const TimeStepping& ts);

enum class WBoundary {
  Periodic,
  Outflow,  // linear extrapolation through the end nodes
};

/// Backward Euler for the transformed problem on a uniform (w, y) window, y
/// periodic, sparse LU solve. ErrorCode::Window for an Outflow window narrower
/// than 8, ErrorCode::Ellipticity if the coefficients degenerate.
Solution solve_tilde_problem(const TransformedCoefficients& tc, const std::vector<double>& w,
                             const std::vector<double>& y,
                             const std::vector<double>& initial, const Field3& forcing,
                             WBoundary wb, const TimeStepping& ts);

/// f = f° + z^p f~ on z = {0, e^w}; ErrorCode::GridMismatch unless the two
/// solutions share y and t.
HalfSpaceField reconstruct(const Solution& boundary, const Solution& tilde, double p);
HalfSpaceField reconstruct(const LogField& f);

/// Boundary trace of a discrete boundary solution: periodic centered
/// differences in y, linear interpolation in y and t.
BoundaryTrace trace_of(const Solution& boundary);

/// Residual of the splitting identity
///   L(f° + z^p f~) = (f°_t - L° f°) + z^p (L~ f~ - G)
/// on a log-uniform grid, every operator applied discretely.
struct SplittingReport {
  double boundary_residual = 0.0;  // max over z = 0
  double interior_residual = 0.0;  // max over z > 0 of |mismatch| / z^p
  double max_residual() const { return std::max(boundary_residual, interior_residual); }
};

SplittingReport splitting_identity(const ModelCoefficients& coeffs, double p,
                                   const BoundaryTrace& f0, const Field3& tilde,
                                   const std::vector<double>& w, const std::vector<double>& y,
                                   const std::vector<double>& t,
                                   TransformVariant variant = TransformVariant::Derived);

/// Side-by-side comparison of the derived and printed transforms: max
/// absolute difference of each coefficient over the grid and the splitting
/// residual (coarse and once-refined) with its observed order.
struct DiscrepancyEntry {
  std::string name;
  double max_abs_difference = 0.0;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyEntry> coefficients;
  SplittingReport derived_coarse, derived_fine;
  SplittingReport literal_coarse, literal_fine;
  double derived_order = 0.0;
  double literal_order = 0.0;
  std::string to_json() const;
};

/// Grid: n_w x n_y x n_t nodes on the given window; the fine grid halves
/// every spacing.
DiscrepancyReport discrepancy_report(const ModelCoefficients& coeffs, double p,
                                     const BoundaryTrace& f0, const Field3& tilde,
                                     double w_min, double w_max, double y_max, double t_max,
                                     std::size_t n_w, std::size_t n_y, std::size_t n_t);

}  // namespace hmcf
