#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hmcf/geometry.hpp"
#include "test_util.hpp"

using namespace hmcf;

namespace {
GridSpec unit_grid(int n, double d) { return {n, n, d, d, -0.5 * (n - 1) * d, -0.5 * (n - 1) * d}; }
}  // namespace

TEST_CASE("field validation") {
  const auto g = unit_grid(9, 0.1);
  CHECK_HMCF_ERROR(HeightField(g, std::vector<double>(81, -1.0), 1e-12),
                   ErrorCode::InvalidArgument);
  CHECK_HMCF_ERROR(HeightField(g, std::vector<double>(80, 0.0), 1e-12),
                   ErrorCode::GridMismatch);
  // two separate flat strips
  CHECK_HMCF_ERROR(HeightField::sample(g, 1e-12, [](double x, double) {
                     return std::abs(std::abs(x) - 0.3) < 1e-9 ? 0.0 : 1.0;
                   }),
                   ErrorCode::MultipleInterfaces);
  // a ring of flat nodes encloses a hole
  CHECK_HMCF_ERROR(HeightField::sample(g, 1e-12, [](double x, double y) {
                     return std::max(std::abs(x), std::abs(y)) > 0.25 &&
                                    std::max(std::abs(x), std::abs(y)) < 0.35
                                ? 0.0
                                : 1.0;
                   }),
                   ErrorCode::InvalidArgument);
}

TEST_CASE("derivatives of x^2 are exact") {
  const auto f = HeightField::sample(unit_grid(11, 0.1), 1e-12, [](double x, double) { return x * x + 1.0; });
  for (int i = 1; i < 10; ++i) {
    const auto d = hessian_and_gradient(f, i, 5);
    CHECK(d.gradient[0] == doctest::Approx(2.0 * f.grid().x(i)).epsilon(1e-12));
    CHECK(d.gradient[1] == doctest::Approx(0.0));
    CHECK(d.hessian.xx == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(d.hessian.xy == doctest::Approx(0.0));
    CHECK(d.hessian.yy == doctest::Approx(0.0));
  }
  CHECK_HMCF_ERROR(hessian_and_gradient(f, 0, 5), ErrorCode::Stencil);
  const auto edge = derivatives_at(f, 0, 0);
  CHECK(edge.hessian.xx == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("zero field has zero derivatives") {
  const auto f = HeightField::sample(unit_grid(7, 0.2), 1e-12, [](double, double) { return 0.0; });
  const auto d = hessian_and_gradient(f, 3, 3);
  CHECK(d.gradient[0] == 0.0);
  CHECK(d.hessian.det() == 0.0);
  CHECK(f.flat_area() == doctest::Approx(49 * 0.04));
  CHECK(f.flat_components() == 1);
}

TEST_CASE("hemisphere apex Hessian is the identity") {
  const double dx = 0.01;
  const auto f = HeightField::sample(unit_grid(21, dx), 1e-14,
                                     [](double x, double y) { return sphere_height(1.0, x, y); });
  const auto d = hessian_and_gradient(f, 10, 10);
  CHECK(d.hessian.xx == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(d.hessian.yy == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(d.hessian.xy) < 1e-10);
}

TEST_CASE("principal curvatures") {
  SUBCASE("unit sphere apex") {
    const auto c = principal_curvatures({0, 0}, {1, 0, 1});
    CHECK(c.lambda1 == doctest::Approx(1.0));
    CHECK(c.lambda2 == doctest::Approx(1.0));
    CHECK(c.K == doctest::Approx(1.0));
    CHECK(c.H == doctest::Approx(2.0));
  }
  SUBCASE("cylinder") {
    const auto c = principal_curvatures({0, 0}, {0, 0, 1});
    CHECK(c.lambda1 == doctest::Approx(0.0));
    CHECK(c.lambda2 == doctest::Approx(1.0));
  }
  SUBCASE("tilted plane has no curvature") {
    const auto c = principal_curvatures({0.3, -0.7}, {0, 0, 0});
    CHECK(c.H == doctest::Approx(0.0));
  }
  SUBCASE("sphere off the apex") {
    // h = 1 - sqrt(1 - x^2 - y^2) at (0.6, 0): both curvatures equal 1
    const double x = 0.6, s = std::sqrt(1 - x * x);
    const auto c = principal_curvatures({x / s, 0}, {1 / (s * s * s), 0, 1 / s});
    CHECK(c.lambda1 == doctest::Approx(1.0));
    CHECK(c.lambda2 == doctest::Approx(1.0));
  }
}

TEST_CASE("harmonic mean velocity") {
  auto v = [](double l1, double l2) {
    return harmonic_mean_velocity({l1, l2, l1 * l2, l1 + l2});
  };
  CHECK(v(1, 1) == doctest::Approx(0.5));
  CHECK(v(0, 1) == doctest::Approx(0.0));
  CHECK(v(0.5, 0.5) == doctest::Approx(0.25));
  CHECK(v(0, 0) == 0.0);
  CHECK(v(-1e-10, 1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_HMCF_ERROR(v(-0.1, 1), ErrorCode::Convexity);
}

TEST_CASE("tolerances scale with the spacing") {
  const auto t = CurvatureTolerances::for_spacing(0.01);
  CHECK(t.h_floor == doctest::Approx(1e-10));
  CHECK(t.clamp_tol == doctest::Approx(1e-6));
}
