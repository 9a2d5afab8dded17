#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hmcf/geometry.hpp"
#include "hmcf/interface.hpp"

namespace hmcf {

// ---------------------------------------------------------------------------
// Pressure transform and the non-degeneracy monitors
// ---------------------------------------------------------------------------

struct PressureField {
  GridSpec grid;
  std::vector<double> values;  // g = h^p, row-major like HeightField
  double p = 0.5;

  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * grid.ny + j];
  }
};

/// g = h^p pointwise; {g = 0} coincides with {h = 0}.
PressureField pressure(const HeightField& field, double p);

struct StarMargins {
  double min_gradient = 0.0;    // min |Dg| over the sampled ring
  double min_tangential = 0.0;  // min g_tau_tau over the sampled ring
  double lambda = 0.0;
  bool passed = false;
  int samples = 0;
  double offset = 0.0;  // distance of the sampling ring outside the interface
};

/// Samples |Dg| and the tangential second derivative g_tau_tau on a ring just
/// outside the interface (in the positive set). tau is Dg/|Dg| rotated by 90
/// degrees; g_tau_tau is a second difference along tau with step 2*dx on a
/// bicubic interpolant. Passes iff both minima are >= lambda. The ring starts
/// 3*dx outside and moves out one dx at a time (up to 8 times) while any
/// stencil touches the flat set; ErrorCode::Sampling if none fits.
StarMargins check_star(const PressureField& g, const Curve& interface,
                       double lambda);

/// A function x = f(z, y) sampled on a uniform tensor grid with z > 0.
struct ZYSamples {
  double z0 = 0.0, dz = 0.0;
  double y0 = 0.0, dy = 0.0;
  int nz = 0, ny = 0;
  std::vector<double> values;  // index iz * ny + jy

  double z(int i) const { return z0 + i * dz; }
  double y(int j) const { return y0 + j * dy; }
  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * ny + j];
  }
};

ZYSamples sample_zy(double z0, double dz, int nz, double y0, double dy, int ny,
                    const std::function<double(double, double)>& f);

/// min over interior nodes of the smaller eigenvalue of
///   [[-z^{2-p} f_zz, z^{1-p} f_zy], [z^{1-p} f_zy, -f_yy]].
/// ErrorCode::Domain if any node has z <= 0.
double check_star_star(const ZYSamples& f, double p);

// ---------------------------------------------------------------------------
// Log coordinates w = ln z and the split f = f_bdry(y,t) + z^p f_tilde(w,y,t)
// ---------------------------------------------------------------------------

/// f(z, y, t) on a tensor grid; z[0] must be 0 (the boundary row).
struct HalfSpaceField {
  std::vector<double> z, y, t;
  std::vector<double> values;  // index (kt * nz + iz) * ny + jy

  std::size_t nz() const { return z.size(); }
  std::size_t ny() const { return y.size(); }
  std::size_t nt() const { return t.size(); }
  double& at(std::size_t kt, std::size_t iz, std::size_t jy) {
    return values[(kt * nz() + iz) * ny() + jy];
  }
  double at(std::size_t kt, std::size_t iz, std::size_t jy) const {
    return values[(kt * nz() + iz) * ny() + jy];
  }
};

HalfSpaceField sample_half_space(std::vector<double> z, std::vector<double> y,
                                 std::vector<double> t,
                                 const std::function<double(double, double, double)>& f);

struct LogField {
  double p = 0.5;
  std::vector<double> w, y, t;
  std::vector<double> boundary;  // f_bdry, index kt * ny + jy
  std::vector<double> tilde;     // f_tilde, index (kt * nw + iw) * ny + jy

  std::size_t nw() const { return w.size(); }
  std::size_t ny() const { return y.size(); }
  std::size_t nt() const { return t.size(); }
  double bdry(std::size_t kt, std::size_t jy) const { return boundary[kt * ny() + jy]; }
  double til(std::size_t kt, std::size_t iw, std::size_t jy) const {
    return tilde[(kt * nw() + iw) * ny() + jy];
  }
};

/// f_bdry = f(0, y, t), f_tilde = e^{-p w} (f - f_bdry) on the rows whose
/// w = ln z lies in [w_min, w_max]. ErrorCode::Window if no row qualifies.
LogField log_decompose(const HalfSpaceField& field, double p, double w_min,
                       double w_max);

/// Builds a LogField directly from closed-form parts on a given (w, y, t) grid.
LogField sample_log_field(double p, std::vector<double> w, std::vector<double> y,
                          std::vector<double> t,
                          const std::function<double(double, double)>& boundary,
                          const std::function<double(double, double, double)>& tilde);

/// Evenly spaced values lo, ..., hi (n >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Default w window: [ln(flat_tol), ln(max z)].
struct WWindow {
  double w_min, w_max;
};
WWindow default_w_window(const HalfSpaceField& field, double flat_tol);

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

struct ZY {
  double z, y;
};
struct ZYT {
  double z, y, t;
};

/// sqrt((ln z1 - ln z2)^2 + (y1 - y2)^2) when both z <= 1; euclidean when
/// both z >= 1; otherwise the hyperbolic leg up to z = 1 plus the euclidean
/// leg beyond it, with the y offset split in proportion to the two vertical
/// legs. ErrorCode::Domain for z <= 0.
double hyperbolic_distance(const ZY& a, const ZY& b);

/// hyperbolic_distance + sqrt(|t1 - t2|).
double parabolic_distance(const ZYT& a, const ZYT& b);

// ---------------------------------------------------------------------------
// Discrete Hoelder norms
// ---------------------------------------------------------------------------

enum class NormMode {
  C0p,        // sup |f_bdry| + sup |f_tilde|
  CAlphaP,    // C^alpha(f_bdry) + C^alpha(f_tilde)
  C2AlphaP,   // C^{2+alpha}(f_bdry) + sum of C^{alpha,p} of the weighted derivatives
};

struct NormReport {
  double c0 = 0.0;
  double holder_seminorm = 0.0;
  double total = 0.0;
  double alpha = 0.0;
  long pairs_sampled = 0;
};

/// Inclusive index ranges on the (w, y, t) axes of a LogField, plus whether
/// the boundary trace belongs to the box.
struct IndexBox {
  std::size_t w_lo = 0, w_hi = 0;
  std::size_t y_lo = 0, y_hi = 0;
  std::size_t t_lo = 0, t_hi = 0;
  bool includes_boundary = true;

  std::size_t node_count() const {
    return (w_hi - w_lo + 1) * (y_hi - y_lo + 1) * (t_hi - t_lo + 1);
  }
  bool contains(std::size_t iw, std::size_t jy, std::size_t kt) const {
    return iw >= w_lo && iw <= w_hi && jy >= y_lo && jy <= y_hi && kt >= t_lo &&
           kt <= t_hi;
  }
};

IndexBox full_box(const LogField& f);

struct NormOptions {
  std::uint64_t seed = 0x5eed;
  long random_pairs = 10000;
  int local_radius = 2;  // structured pairs: all offsets within this many nodes
  /// Restricts the sup to nodes inside the box. The random pairs are always
  /// drawn over the whole grid and then filtered, so a sub-box never reports
  /// a larger value than its container.
  std::optional<IndexBox> window;
};

/// Pair-sampled discrete norm. The C2AlphaP mode needs uniform w and y
/// spacing (and uniform t when nt >= 3). ErrorCode::Sampling when the sample
/// holds no pair of distinct points.
NormReport holder_norm(const LogField& f, double alpha, NormMode mode,
                       const NormOptions& opts = {});

/// Parabolic Schauder box around P = (z0, y0, t0): z in [z0 - e^r, z0 + e^r]
/// (z >= 0), |y - y0| <= r, t0 - r^2 <= t <= t0. ErrorCode::Window if it
/// holds no node, InvalidArgument unless 0 < r <= 1.
IndexBox schauder_box(const LogField& grid, const ZYT& P, double r);

}  // namespace hmcf
