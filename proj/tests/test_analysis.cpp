#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "hmcf/analysis.hpp"
#include "hmcf/experiment.hpp"
#include "hmcf/interface.hpp"
#include "test_util.hpp"

using namespace hmcf;

TEST_CASE("pressure") {
  const auto g = GridSpec::centered_square(41, 1.0);
  const auto four = pressure(HeightField::sample(g, 1e-12, [](double, double) { return 4.0; }), 0.5);
  for (double v : four.values) CHECK(v == doctest::Approx(2.0));
  const auto zero = pressure(HeightField::sample(g, 1e-12, [](double, double) { return 0.0; }), 0.5);
  for (double v : zero.values) CHECK(v == 0.0);
  const auto dist = pressure(flat_disk_field(g, 0.5, 2.0, 1e-12), 0.5);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      CHECK(dist(i, j) == doctest::Approx(std::max(std::hypot(g.x(i), g.y(j)) - 0.5, 0.0)));
}

TEST_CASE("star condition of the distance to a disk") {
  const auto f = flat_disk_field(GridSpec::centered_square(161, 1.0), 0.5, 2.0, 1e-12);
  const auto c = extract_interface(f, 1e-9);
  REQUIRE(c);
  const auto m = check_star(pressure(f, 0.5), *c, 0.9);
  CHECK(m.passed);
  CHECK(m.min_gradient == doctest::Approx(1.0).epsilon(0.02));
  // g_tau_tau = 1 / rho on the sampling ring
  CHECK(m.min_tangential == doctest::Approx(1.0 / (0.5 + m.offset)).epsilon(0.05));
  CHECK(m.samples > 0);
  CHECK(check_star(pressure(f, 0.5), *c, 0.0).passed);
}

TEST_CASE("star condition fails where the flat side is concave") {
  // flat set rho < 0.4 (1 + 0.2 cos 3 theta) has concave stretches; the
  // level sets of g bend the wrong way there, so g_tau_tau < 0
  const auto f = HeightField::sample(GridSpec::centered_square(161, 1.0), 1e-12, [](double x, double y) {
    const double d = std::hypot(x, y) - 0.4 * (1.0 + 0.2 * std::cos(3.0 * std::atan2(y, x)));
    return d > 0.0 ? d * d : 0.0;
  });
  const auto c = extract_interface(f, 1e-9);
  REQUIRE(c);
  const auto m = check_star(pressure(f, 0.5), *c, 0.1);
  CHECK_FALSE(m.passed);
  CHECK(m.min_tangential < 0.0);
}

TEST_CASE("star-star eigenvalue margin") {
  const double p = 0.5;
  auto sample = [](const std::function<double(double, double)>& f) {
    return sample_zy(0.1, 0.01, 100, -1.0, 0.1, 21, f);
  };
  // concave in z and y: diag(p(1-p), 2)
  CHECK(check_star_star(sample([p](double z, double y) { return std::pow(z, p) - y * y; }), p) ==
        doctest::Approx(p * (1.0 - p)).epsilon(2e-2));
  // -(z^p + y^2) is convex in z, so the z entry is -p(1-p)
  CHECK(check_star_star(sample([p](double z, double y) { return -(std::pow(z, p) + y * y); }), p) ==
        doctest::Approx(-p * (1.0 - p)).epsilon(2e-2));
  CHECK(std::abs(check_star_star(sample([](double z, double y) { return 2.0 * z - 3.0 * y + 1.0; }), p)) <
        1e-8);
  CHECK(check_star_star(sample([p](double z, double) { return -std::pow(z, p); }), p) < 0.0);
  const auto bad = sample_zy(0.0, 0.05, 20, -1.0, 0.1, 21, [](double, double) { return 0.0; });
  CHECK_HMCF_ERROR(check_star_star(bad, p), ErrorCode::Domain);
}

namespace {
HalfSpaceField half_space(const std::function<double(double, double, double)>& f) {
  std::vector<double> z{0.0};
  for (double w = -4.0; w <= 1.0 + 1e-12; w += 0.25) z.push_back(std::exp(w));
  return sample_half_space(z, linspace(0.0, 1.0, 5), {0.0}, f);
}
}  // namespace

TEST_CASE("log decomposition") {
  const double p = 0.5;
  const auto a = log_decompose(half_space([p](double z, double, double) { return std::pow(z, p); }),
                               p, -4.0, 1.0);
  for (double b : a.boundary) CHECK(b == 0.0);
  for (double v : a.tilde) CHECK(v == doctest::Approx(1.0));

  const auto b = log_decompose(half_space([](double, double y, double) { return std::sin(y); }),
                               p, -4.0, 1.0);
  for (std::size_t j = 0; j < b.ny(); ++j) CHECK(b.bdry(0, j) == doctest::Approx(std::sin(b.y[j])));
  for (double v : b.tilde) CHECK(v == doctest::Approx(0.0));

  const auto c = log_decompose(half_space([](double z, double, double) { return z; }), p, -4.0, 1.0);
  for (std::size_t i = 0; i < c.nw(); ++i)
    CHECK(c.til(0, i, 2) == doctest::Approx(std::exp(c.w[i] / 2.0)));
  for (std::size_t i = 1; i < c.nw(); ++i) CHECK(c.w[i] > c.w[i - 1]);

  CHECK_HMCF_ERROR(log_decompose(half_space([](double, double, double) { return 0.0; }), p, 5.0, 6.0),
                   ErrorCode::Window);
}

TEST_CASE("round trip through the split") {
  const double p = 0.5;
  auto f = [](double z, double y, double) { return std::cos(y) + z * (1.0 + y * y); };
  const auto hs = half_space(f);
  const auto lf = log_decompose(hs, p, -4.0, 1.0);
  for (std::size_t i = 0; i < lf.nw(); ++i)
    for (std::size_t j = 0; j < lf.ny(); ++j) {
      const double z = std::exp(lf.w[i]);
      const double back = lf.bdry(0, j) + std::pow(z, p) * lf.til(0, i, j);
      CHECK(back == doctest::Approx(f(z, lf.y[j], 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("distances") {
  CHECK(hyperbolic_distance({0.3, 1.0}, {0.3, -0.5}) == doctest::Approx(1.5));
  CHECK(hyperbolic_distance({std::exp(-2.0), 0.0}, {std::exp(-1.0), 0.0}) == doctest::Approx(1.0));
  CHECK(hyperbolic_distance({0.7, 0.2}, {0.7, 0.2}) == 0.0);
  CHECK(parabolic_distance({0.3, 1.0, 0.5}, {0.3, -0.5, 0.5}) == doctest::Approx(1.5));
  CHECK(parabolic_distance({0.3, 1.0, 0.5}, {0.3, 1.0, 0.54}) == doctest::Approx(0.2));
  CHECK(parabolic_distance({std::exp(-2.0), 0.0, 0.0}, {std::exp(-1.0), 0.0, 0.04}) ==
        doctest::Approx(1.2));
}

TEST_CASE("Hoelder norms") {
  const double p = 0.5;
  const auto w = linspace(-4.0, 1.0, 21);
  const auto t = std::vector<double>{0.0};

  const auto c = sample_log_field(p, w, linspace(0.0, 1.0, 11), t, [](double, double) { return -3.0; },
                                  [](double, double, double) { return 0.0; });
  for (auto mode : {NormMode::C0p, NormMode::CAlphaP}) {
    const auto r = holder_norm(c, 0.5, mode);
    CHECK(r.holder_seminorm == doctest::Approx(0.0));
    CHECK(r.total == doctest::Approx(3.0));
  }

  const auto lip = sample_log_field(p, w, linspace(0.0, 1.0, 11), t, [](double y, double) { return y; },
                                    [](double, double, double) { return 0.0; });
  CHECK(holder_norm(lip, 1.0, NormMode::CAlphaP).holder_seminorm == doctest::Approx(1.0));

  // f = z^{p/2}: f~ = e^{-p w / 2}; lowering w_min by ln 4 multiplies sup f~ by 4^{p/2}
  auto sup_tilde = [&](double w_min) {
    const auto f = sample_log_field(p, linspace(w_min, 1.0, 41), {0.0, 1.0}, t,
                                    [](double, double) { return 0.0; },
                                    [p](double ww, double, double) { return std::exp(-p * ww / 2.0); });
    return holder_norm(f, 0.5, NormMode::C0p).c0;
  };
  const double ratio = sup_tilde(-4.0 - std::log(4.0)) / sup_tilde(-4.0);
  CHECK(ratio == doctest::Approx(std::pow(4.0, p / 2.0)));
  CHECK(sup_tilde(-8.0) / sup_tilde(-4.0) >= 2.0);
}

TEST_CASE("Schauder boxes") {
  const double p = 0.5;
  const auto f = sample_log_field(p, linspace(-6.0, 1.0, 29), linspace(-2.0, 2.0, 17),
                                  linspace(0.0, 1.0, 5), [](double, double) { return 0.0; },
                                  [](double, double, double) { return 0.0; });
  const auto b1 = schauder_box(f, {0.0, 0.0, 1.0}, 1.0);
  CHECK(b1.includes_boundary);
  CHECK(f.w[b1.w_lo] == doctest::Approx(-6.0));
  CHECK(f.w[b1.w_hi] == doctest::Approx(1.0));
  CHECK(f.y[b1.y_lo] == doctest::Approx(-1.0));
  CHECK(f.y[b1.y_hi] == doctest::Approx(1.0));
  CHECK(b1.t_lo == 0);
  CHECK(b1.t_hi == 4);
  const auto bh = schauder_box(f, {0.0, 0.0, 1.0}, 0.5);
  for (std::size_t iw = bh.w_lo; iw <= bh.w_hi; ++iw)
    for (std::size_t jy = bh.y_lo; jy <= bh.y_hi; ++jy)
      for (std::size_t kt = bh.t_lo; kt <= bh.t_hi; ++kt) CHECK(b1.contains(iw, jy, kt));
  CHECK(bh.node_count() < b1.node_count());

  const auto coarse = sample_log_field(p, linspace(-1.0, 1.0, 3), {-0.5, 0.5}, {0.0},
                                       [](double, double) { return 0.0; },
                                       [](double, double, double) { return 0.0; });
  CHECK_HMCF_ERROR(schauder_box(coarse, {0.0, 0.0, 0.0}, 1e-3), ErrorCode::Window);
  CHECK_HMCF_ERROR(schauder_box(f, {0.0, 0.0, 1.0}, 2.0), ErrorCode::InvalidArgument);
}
