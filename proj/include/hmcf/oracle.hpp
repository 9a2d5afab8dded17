#pragma once

#include <functional>
#include <vector>

namespace hmcf {

/// R(t) of a sphere moving by harmonic mean curvature; Extinct once t >= R0^2.
double sphere_radius(double R0, double t);

/// r(t) of a circle under curve shortening; Extinct once t >= r0^2 / 2.
double circle_csf_radius(double r0, double t);

/// Axisymmetric height profile h(rho) on the uniform grid rho_k = k * dr.
struct RadialProfile {
  double dr = 0.0;
  std::vector<double> h;
  double flat_tol = 1e-12;

  RadialProfile(double dr, std::vector<double> h, double flat_tol = 1e-12);

  std::size_t size() const { return h.size(); }
  double rho(std::size_t k) const { return static_cast<double>(k) * dr; }
  /// Outermost radius where h crosses `level` (linear in sqrt(h)); 0 if h
  /// exceeds it on the axis.
  double level_radius(double level) const;
  /// Radius of the flat disk. The explicit scheme leaves a thin positive
  /// precursor ahead of the edge, so instead of the zero set this uses the
  /// quadratic growth h ~ c (rho - r)^2: with r1, r2 the crossings of `level`
  /// and 4 * level, r = 2 r1 - r2. level <= 0 picks (3 dr)^2.
  double flat_radius(double level = 0.0) const;
};

/// n nodes on [0, r_max].
RadialProfile sample_radial(double r_max, int n, const std::function<double(double)>& f,
                            double flat_tol = 1e-12);

/// Rate h_t at each node: harmonic mean of the meridian and parallel
/// curvatures times sqrt(1 + h'^2). On the axis the parallel curvature is
/// replaced by its limit h''. Flat nodes and non-convex directions give 0.
std::vector<double> radial_rates(const RadialProfile& profile);

/// Largest stable explicit step, safety * dr^2 / (2 * max diffusivity).
double radial_stable_dt(const RadialProfile& profile, double safety = 0.9);

/// One forward-Euler step. ErrorCode::Stiffness if dt exceeds radial_stable_dt
/// with safety 1.
RadialProfile radial_hmcf_step(const RadialProfile& profile, double dt);

/// Advances to t_end with stable steps; returns the final profile.
RadialProfile radial_hmcf_run(RadialProfile profile, double t_end, double safety = 0.9);

}  // namespace hmcf
