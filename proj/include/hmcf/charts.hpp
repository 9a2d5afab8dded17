#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hmcf {

using Vec3 = std::array<double, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// A vector function of (u, v) with its first and second partials.
struct Jet3 {
  Vec3 f{}, fu{}, fv{}, fuu{}, fuv{}, fvv{};
};

/// Scalar field w(u, v) with derivatives w1 = w_u, w2 = w_v, w11 = w_uu, ...
struct WJet {
  double w = 0.0, w1 = 0.0, w2 = 0.0, w11 = 0.0, w12 = 0.0, w22 = 0.0;
};

using JetFn = std::function<Jet3(double, double)>;
using WFieldFn = std::function<WJet(double, double)>;

/// Phi(u, v, w) = S(u, v) + w T(u, v) over the unit disk.
struct ChartMap {
  JetFn S, T;

  Vec3 operator()(double u, double v, double w) const;

  /// S = (u, v, 0), T = (0, 0, 1).
  static ChartMap identity();
  /// S = (sx u, sy v, 0), T = (0, 0, 1).
  static ChartMap scaled(double sx, double sy);
  /// Smooth random perturbation of the identity chart: every component of S
  /// and T gets a random trigonometric bump of size `amplitude`; S3 gets an
  /// O(1) random quadratic so the image surface is curved.
  static ChartMap random(std::uint64_t seed, double amplitude = 0.1);
};

/// Random smooth w-field (quadratic plus a trigonometric term).
WFieldFn random_wfield(std::uint64_t seed, double scale = 0.2);
WFieldFn constant_wfield(double w);

/// Chart quantities on the surface {w = W(u, v)} pushed through Phi. Partial
/// derivatives below are totals along that surface.
struct ChartEval {
  Vec3 point{};  // (x, y, z)
  Mat2 J{};      // [[x_u, x_v], [y_u, y_v]]
  Mat2 A{};      // [[u_x, v_x], [u_y, v_y]]
  Mat2 A_inv{};  // inverse of A, equal to J transposed: [[x_u, y_u], [x_v, y_v]]
  Mat2 B1{};     // d(A_inv)/dx
  Mat2 B2{};     // d(A_inv)/dy
  double det_J = 0.0;
};

/// ErrorCode::SingularJacobian if |det J| < 1e-8, Domain outside the unit disk.
ChartEval evaluate_chart(const ChartMap& chart, double u, double v, const WJet& w);
ChartEval evaluate_chart(const ChartMap& chart, double u, double v, double w);

/// The nine coefficients of one second derivative of z:
///   A11 w11 + A12 w12 + A22 w22 + B1 w1 + B2 w2 + B12 w1 w2 + B11 w1^2
///   + B22 w2^2 + C,
/// with a, b, c, d (the entries of A) held at their values on the surface.
struct SecondDerivCoeffs {
  double A11 = 0, A12 = 0, A22 = 0, B1 = 0, B2 = 0, B12 = 0, B11 = 0, B22 = 0, C = 0;

  double evaluate(const WJet& w) const;
  std::array<double, 9> as_array() const;
  static const std::array<const char*, 9>& names();
};

struct SecondDerivatives {
  double z_x = 0.0, z_y = 0.0;
  double z_xx = 0.0, z_yy = 0.0, z_xy = 0.0;
  SecondDerivCoeffs xx, yy, xy;
};

SecondDerivatives second_derivative_expansion(const ChartMap& chart, double u, double v,
                                              const WJet& w);

/// The coefficients as printed, evaluated with a, b, c, d from the surface,
/// partials of Phi at fixed w (z_u = S3_u + w T3_u, z_w = T3, y_w = T2,
/// z_uw = T3_u, y_uw = T2_u, x_uu = S1_uu + w T1_uu, ...) and w1, w2 from the
/// field.
struct PrintedCoefficients {
  SecondDerivCoeffs xx, yy, xy;
};
PrintedCoefficients printed_coefficients(const ChartMap& chart, double u, double v,
                                         const WJet& w);

/// Finite-difference oracle: inverts (u, v) -> (x, y) on the surface by
/// Newton iteration and differentiates z(x, y) with centered differences of
/// step h (gradient and Hessian).
struct OracleDerivatives {
  double z_x = 0.0, z_y = 0.0, z_xx = 0.0, z_yy = 0.0, z_xy = 0.0;
};
OracleDerivatives fd_oracle(const ChartMap& chart, const WFieldFn& field, double u, double v,
                            double h);
/// Richardson combination of steps h and h/2 (fourth order).
OracleDerivatives fd_oracle_richardson(const ChartMap& chart, const WFieldFn& field, double u,
                                       double v, double h);

/// Inverse of the surface map (x, y) -> (u, v), Newton with the analytic
/// Jacobian. ErrorCode::SingularJacobian if it fails to converge.
std::array<double, 2> invert_surface(const ChartMap& chart, const WFieldFn& field, double x,
                                     double y, std::array<double, 2> guess);

/// Residuals of the assembly identities
///   (u_xx, u_xy) = -A B1 grad u,  (v_xx, v_xy) = -A B1 grad v,
///   (u_xy, u_yy) = -A B2 grad u,  (v_xy, v_yy) = -A B2 grad v,
/// against D^2 u, D^2 v computed independently from the inverse-function
/// formula. Returns the largest absolute residual.
double assembly_identity_residual(const ChartMap& chart, double u, double v, const WJet& w);

/// The printed evolution formula w_t = z_t / (z_y y_w - z_w).
/// ErrorCode::Transversality if the denominator vanishes.
double w_time_derivative(double z_t, double z_y, double y_w, double z_w);

/// Consistent version for a graph z = h(x, y, t) seen through Phi:
///   w_t = h_t / (z_w - h_x x_w - h_y y_w).
double w_time_derivative_consistent(double h_t, double h_x, double h_y, double x_w,
                                    double y_w, double z_w);

/// Offset range: 0.1 times the smallest focal distance 1/|kappa| of S over a
/// polar sample of the disk, capped at 1.
double default_eta(const ChartMap& chart, int samples = 24);

/// max |T3| over the annulus 1 - delta <= |(u, v)| <= 1.
double annulus_t3(const ChartMap& chart, double delta, int samples = 64);

/// Nested chart families used to locate where a printed coefficient holds.
enum class ChartClass {
  General,         // all components of S and T perturbed
  NoXOffset,       // T1 = 0, so x_w = 0 (the printed tables carry no x_w terms)
  VerticalOffset,  // T = (0, 0, T3)
  GraphBase,       // T = (0, 0, T3) and S = (u, v, S3)
};
const char* chart_class_name(ChartClass c);
ChartMap restrict_chart(const ChartMap& chart, ChartClass c);

struct ErrataEntry {
  std::string coefficient;  // e.g. "xx.A11"
  double printed = 0.0;
  double oracle = 0.0;
  double discrepancy = 0.0;  // |printed - oracle| / max(1, |oracle|)
  int sample = -1;
  /// Widest class in which the printed value matched at every sample, or
  /// "none".
  std::string agrees_in = "none";
};

struct ErrataReport {
  int samples = 0;
  double tolerance = 1e-6;
  double max_expansion_error = 0.0;  // derived expansion vs FD oracle
  int expansion_failures = 0;
  /// One entry per printed coefficient that disagrees at any sample of a
  /// general chart (worst sample kept).
  std::vector<ErrataEntry> coefficients;
  std::vector<std::string> structural;  // layout and formula notes
  std::string to_json() const;
};

/// Samples `n` random charts, w-fields and points in the disk of radius 0.7.
ErrataReport validate_charts(int n, std::uint64_t seed, double tolerance = 1e-6);

/// Linearised-operator coefficients dF/d(w_ij), dF/d(w_i), dF/dw of
/// F = w_t (consistent formula, z_t from the graph flow quotient) along a ray.
struct StructureSample {
  double distance = 0.0;  // to the ring the ray approaches
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, c = 0;
  double velocity = 0.0;
};

struct CoefficientClass {
  std::string name;
  double min_abs = 0.0, max_abs = 0.0;
  double decay_exponent = 0.0;  // slope of log|coef| against log(distance)
  std::string behaviour;        // "vanishing", "bounded", "bounded_below"
};

struct StructureReport {
  std::vector<StructureSample> samples;
  std::vector<CoefficientClass> classes;
  bool zero_velocity = false;
  std::string to_json() const;
};

/// Ray from `ring_point` outward along `direction` (unit vector in (u, v)),
/// sampled at the given distances from the ring.
StructureReport linearization_structure_report(const ChartMap& chart, const WFieldFn& field,
                                               std::array<double, 2> ring_point,
                                               std::array<double, 2> direction,
                                               const std::vector<double>& distances);

}  // namespace hmcf
