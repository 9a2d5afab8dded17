#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hmcf/experiment.hpp"
#include "hmcf/interface.hpp"
#include "test_util.hpp"

using namespace hmcf;

TEST_CASE("curve validation") {
  CHECK_HMCF_ERROR(Curve({{0, 0}, {1, 0}, {0, 1}}), ErrorCode::InvalidArgument);
  auto pts = Curve::circle(1.0, 16).points();
  std::reverse(pts.begin(), pts.end());
  CHECK_HMCF_ERROR(Curve(pts), ErrorCode::InvalidArgument);
  const auto c = Curve::circle(1.0, 64);
  CHECK(c.signed_area() > 0.0);
  CHECK(c.mean_radius() == doctest::Approx(1.0));
}

TEST_CASE("interface of the flat disk field") {
  const auto f = flat_disk_field(GridSpec::centered_square(101, 1.0), 0.5, 2.0, 1e-12);
  const auto c = extract_interface(f, 1e-9);
  REQUIRE(c);
  CHECK(c->signed_area() > 0.0);
  for (const auto& p : c->points()) CHECK(std::abs(std::hypot(p[0], p[1]) - 0.5) <= f.dx());
  const auto r = flat_radius_estimate(f);
  REQUIRE(r);
  CHECK(*r == doctest::Approx(0.5).epsilon(0.01));
  CHECK(edge_level(f) == doctest::Approx(9.0 * f.dx() * f.dx()));
}

TEST_CASE("no flat side gives no interface") {
  const auto f = HeightField::sample(GridSpec::centered_square(21, 1.0), 1e-12,
                                     [](double x, double y) { return 1.0 + x * x + y * y; });
  CHECK_FALSE(extract_interface(f, 1e-9));
  CHECK_FALSE(flat_radius_estimate(f));
}

TEST_CASE("contour leaving the domain is an error") {
  const auto f = HeightField::sample(GridSpec::centered_square(21, 1.0), 1e-12, [](double x, double) {
    return x < 0.0 ? 0.0 : x * x;
  });
  CHECK_HMCF_ERROR(extract_interface(f, 1e-9), ErrorCode::OpenInterface);
}

TEST_CASE("discrete curvature of a regular polygon") {
  const auto c = Curve::circle(1.0, 256);
  for (double k : discrete_curvature(c)) CHECK(std::abs(k - 1.0) <= 1e-3);
}

TEST_CASE("one CSF step of the unit circle") {
  const auto c = Curve::circle(1.0, 256);
  const double dt = std::min(1e-3, 0.25 * c.min_segment() * c.min_segment());
  const auto r = csf_step(c, dt);
  CHECK_FALSE(r.extinct);
  CHECK(r.curve.mean_radius() == doctest::Approx(std::sqrt(1.0 - 2.0 * dt)).epsilon(1e-6));
}

TEST_CASE("CSF of the unit circle to t = 1e-3") {
  CsfIntegrator it(Curve::circle(1.0, 128));
  REQUIRE(it.advance_to(1e-3, 1e-4));
  CHECK(it.curve().mean_radius() == doctest::Approx(std::sqrt(1.0 - 2e-3)).epsilon(1e-4));
}

TEST_CASE("CSF keeps an ellipse convex") {
  Curve c = Curve::ellipse(1.0, 0.5, 128);
  for (int k = 0; k < 100; ++k) {
    const double dt = 0.2 * c.min_segment() * c.min_segment();
    c = csf_step(c, dt).curve;
    for (double kappa : discrete_curvature(c)) REQUIRE(kappa > 0.0);
  }
}

TEST_CASE("CSF step bound is enforced") {
  const auto c = Curve::circle(1.0, 64);
  CHECK_HMCF_ERROR(csf_step(c, c.min_segment() * c.min_segment()), ErrorCode::InvalidArgument);
}

TEST_CASE("Hausdorff distance between curves") {
  const auto a = Curve::circle(1.0, 512);
  CHECK(curve_distance(a, a) == doctest::Approx(0.0));
  CHECK(curve_distance(a, Curve::circle(1.1, 512)) == doctest::Approx(0.1).epsilon(1e-3));
  CHECK(curve_distance(a, Curve::circle(1.0, 512, {0.3, 0.0})) ==
        doctest::Approx(0.3).epsilon(1e-3));
}
