#include "hmcf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hmcf/error.hpp"

namespace hmcf {

double sphere_radius(double R0, double t) {
  if (!(R0 > 0.0)) fail(ErrorCode::InvalidArgument, "sphere radius must be positive");
  if (t >= R0 * R0) fail(ErrorCode::Extinct, "sphere extinct at t = R0^2");
  return std::sqrt(R0 * R0 - t);
}

double circle_csf_radius(double r0, double t) {
  if (!(r0 > 0.0)) fail(ErrorCode::InvalidArgument, "circle radius must be positive");
  if (t >= 0.5 * r0 * r0) fail(ErrorCode::Extinct, "circle extinct at t = r0^2 / 2");
  return std::sqrt(r0 * r0 - 2.0 * t);
}

RadialProfile::RadialProfile(double dr_, std::vector<double> h_, double flat_tol_)
    : dr(dr_), h(std::move(h_)), flat_tol(flat_tol_) {
  if (!(dr > 0.0)) fail(ErrorCode::InvalidArgument, "dr must be positive");
  if (h.size() < 5) fail(ErrorCode::InvalidArgument, "radial profile needs >= 5 nodes");
  for (double v : h)
    if (!std::isfinite(v) || v < 0.0)
      fail(ErrorCode::InvalidArgument, "radial profile values must be finite and >= 0");
}

double RadialProfile::level_radius(double level) const {
  if (h[0] >= level) return 0.0;
  std::size_t k = 1;
  while (k < h.size() && h[k] < level) ++k;
  if (k == h.size()) return rho(k - 1);
  const double s0 = std::sqrt(h[k - 1]), s1 = std::sqrt(h[k]), s = std::sqrt(level);
  return rho(k - 1) + dr * (s - s0) / (s1 - s0);
}

double RadialProfile::flat_radius(double level) const {
  if (level <= 0.0) level = 9.0 * dr * dr;
  if (h[0] >= flat_tol) return 0.0;
  return std::max(2.0 * level_radius(level) - level_radius(4.0 * level), 0.0);
}

RadialProfile sample_radial(double r_max, int n, const std::function<double(double)>& f,
                            double flat_tol) {
  if (n < 5 || !(r_max > 0.0))
    fail(ErrorCode::InvalidArgument, "sample_radial needs n >= 5 and r_max > 0");
  const double dr = r_max / (n - 1);
  std::vector<double> h(n);
  for (int k = 0; k < n; ++k) h[k] = f(k * dr);
  return RadialProfile(dr, std::move(h), flat_tol);
}

namespace {

struct NodeRate {
  double rate = 0.0;
  double diffusivity = 0.0;
};

NodeRate node_rate(const RadialProfile& p, std::size_t k) {
  const auto& h = p.h;
  const std::size_t n = h.size();
  const double dr = p.dr;
  double d1, d2;
  if (k == 0) {
    d1 = 0.0;
    d2 = 2.0 * (h[1] - h[0]) / (dr * dr);
  } else if (k == n - 1) {
    d1 = (1.5 * h[k] - 2.0 * h[k - 1] + 0.5 * h[k - 2]) / dr;
    d2 = (2.0 * h[k] - 5.0 * h[k - 1] + 4.0 * h[k - 2] - h[k - 3]) / (dr * dr);
  } else {
    d1 = (h[k + 1] - h[k - 1]) / (2.0 * dr);
    d2 = (h[k + 1] - 2.0 * h[k] + h[k - 1]) / (dr * dr);
  }
  NodeRate out;
  if (std::abs(d1) <= p.flat_tol && std::abs(d2) <= p.flat_tol) return out;
  const double w = std::sqrt(1.0 + d1 * d1);
  const double k1 = std::max(d2 / (w * w * w), 0.0);
  const double k2 = k == 0 ? k1 : std::max(d1 / (p.rho(k) * w), 0.0);
  const double H = k1 + k2;
  if (!(H > 1e-12)) {
    out.diffusivity = 0.5;
    return out;
  }
  out.rate = k1 * k2 / H * w;
  // d(rate)/d(h''); on the axis both curvatures carry h''.
  out.diffusivity = k == 0 ? 0.5 : (k2 * k2) / (H * H) / (w * w);
  return out;
}

}  // namespace

std::vector<double> radial_rates(const RadialProfile& profile) {
  std::vector<double> r(profile.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = node_rate(profile, k).rate;
  return r;
}

double radial_stable_dt(const RadialProfile& profile, double safety) {
  double dmax = 0.0;
  for (std::size_t k = 0; k < profile.size(); ++k)
    dmax = std::max(dmax, node_rate(profile, k).diffusivity);
  if (dmax <= 0.0) dmax = 1.0;
  return safety * profile.dr * profile.dr / (2.0 * dmax);
}

RadialProfile radial_hmcf_step(const RadialProfile& profile, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "dt must be positive");
  const double bound = radial_stable_dt(profile, 1.0);
  if (dt > bound * (1.0 + 1e-12))
    fail(ErrorCode::Stiffness, "radial step violates the CFL bound " + std::to_string(bound));
  RadialProfile next = profile;
  const auto rate = radial_rates(profile);
  for (std::size_t k = 0; k < next.size(); ++k) next.h[k] += dt * rate[k];
  return next;
}

RadialProfile radial_hmcf_run(RadialProfile profile, double t_end, double safety) {
  double t = 0.0;
  while (t < t_end) {
    double dt = radial_stable_dt(profile, safety);
    if (t + dt >= t_end) dt = t_end - t;
    if (!(dt > 0.0)) break;
    profile = radial_hmcf_step(profile, dt);
    t += dt;
  }
  return profile;
}

}  // namespace hmcf
