#include <cmath>

#include "doctest.h"
#include "hmcf/oracle.hpp"
#include "test_util.hpp"

using namespace hmcf;

TEST_CASE("sphere radius law") {
  CHECK(sphere_radius(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(sphere_radius(1.0, 0.5) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(sphere_radius(2.0, 3.0) == doctest::Approx(1.0));
  CHECK_HMCF_ERROR(sphere_radius(1.0, 1.0), ErrorCode::Extinct);
}

TEST_CASE("circle shortening law") {
  CHECK(circle_csf_radius(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(circle_csf_radius(1.0, 0.25) == doctest::Approx(std::sqrt(0.5)));
  CHECK(circle_csf_radius(0.5, 0.1) == doctest::Approx(0.22361).epsilon(1e-5));
  CHECK_HMCF_ERROR(circle_csf_radius(0.5, 0.125), ErrorCode::Extinct);
}

TEST_CASE("radial hemisphere rises at rate 1/2 on the axis") {
  const auto prof = sample_radial(0.5, 101, [](double r) { return 1.0 - std::sqrt(1.0 - r * r); });
  const auto rate = radial_rates(prof);
  CHECK(std::abs(rate[0] - 0.5) <= 4.0 * prof.dr * prof.dr);
}

TEST_CASE("flat radial profile is unchanged") {
  const auto prof = sample_radial(1.0, 51, [](double) { return 0.0; });
  const auto out = radial_hmcf_run(prof, 0.1);
  for (double v : out.h) CHECK(v == 0.0);
}

TEST_CASE("radial flat disk follows the circle law") {
  const double r0 = 0.5;
  auto prof = sample_radial(1.0, 401, [r0](double r) {
    const double d = std::max(r - r0, 0.0);
    return d * d;
  });
  CHECK(prof.flat_radius() == doctest::Approx(r0).epsilon(0.01));
  prof = radial_hmcf_run(prof, 0.02);
  const double exact = circle_csf_radius(r0, 0.02);
  CHECK(std::abs(prof.flat_radius() - exact) / exact <= 0.02);
}

TEST_CASE("radial step beyond the stability bound is rejected") {
  const auto prof = sample_radial(0.5, 51, [](double r) { return 1.0 - std::sqrt(1.0 - r * r); });
  CHECK_HMCF_ERROR(radial_hmcf_step(prof, 10.0 * radial_stable_dt(prof, 1.0)),
                   ErrorCode::Stiffness);
}
