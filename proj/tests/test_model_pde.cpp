#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hmcf/analysis.hpp"
#include "hmcf/model_pde.hpp"
#include "test_util.hpp"

using namespace hmcf;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

TransformedCoefficients plain_tilde(double c) {
  TransformedCoefficients tc;
  tc.a11 = constant_field(1.0);
  tc.a12 = constant_field(0.0);
  tc.a22 = constant_field(1.0);
  tc.b1 = constant_field(0.0);
  tc.b2 = constant_field(0.0);
  tc.c = constant_field(c);
  tc.G = constant_field(0.0);
  return tc;
}
}  // namespace

TEST_CASE("model operator residuals") {
  const auto k = ModelCoefficients::laplacian();
  const auto z = log_uniform_z(-4.0, 0.0, 33);
  const auto y = linspace(0.0, 1.0, 9);
  const auto t = linspace(0.0, 0.1, 5);
  const auto r = apply_model_operator(k, sample_half_space(z, y, t, [](double zz, double, double) {
    return std::sqrt(zz);
  }));
  for (std::size_t i = 1; i < z.size(); ++i)
    CHECK(r.at(2, i, 4) == doctest::Approx(0.25 * std::sqrt(z[i])).epsilon(5e-3));

  const auto zero = apply_model_operator(k, sample_half_space(z, y, t, [](double, double, double) {
    return 0.0;
  }));
  for (double v : zero.values) CHECK(v == 0.0);

  // z-independent heat solution
  const auto heat = apply_model_operator(
      k, sample_half_space(z, linspace(0.0, two_pi, 65), linspace(0.0, 0.01, 11),
                           [](double, double yy, double tt) { return std::exp(-tt) * std::sin(yy); }));
  for (double v : heat.values) CHECK(std::abs(v) < 5e-3);

  CHECK_HMCF_ERROR(apply_model_operator(k, sample_half_space({0.0, 0.1, 0.2, 0.3, 0.4}, y, t,
                                                             [](double, double, double) { return 0.0; })),
                   ErrorCode::Stencil);
}

TEST_CASE("ellipticity check") {
  const auto z = log_uniform_z(-2.0, 0.0, 5);
  const auto y = linspace(0.0, 1.0, 3);
  CHECK(check_ellipticity(ModelCoefficients::laplacian(0.5), z, y, {0.0}) == doctest::Approx(1.0));
  CHECK_HMCF_ERROR(check_ellipticity(ModelCoefficients::constant(1, 1, 1, 0, 0, 0, 0.5), z, y, {0.0}),
                   ErrorCode::Ellipticity);
}

TEST_CASE("transformed coefficients") {
  auto b1_hat = [](double p, double a11, double b1) {
    return transform_coefficients(ModelCoefficients::constant(a11, 0, 1, b1, 0, 0, 0.5), p)
        .b1(-1.0, 0.3, 0.0);
  };
  CHECK(b1_hat(0.5, 1.0, 0.0) == doctest::Approx(0.0));
  CHECK(b1_hat(0.75, 1.0, 1.0) == doctest::Approx(1.5));
  CHECK(literal_c_bracket(1.0, 0.0, 0.0, 0.5) == doctest::Approx(0.25));
  CHECK_HMCF_ERROR(b1_hat(1.0, 1.0, 1.0), ErrorCode::InvalidArgument);

  const auto k = ModelCoefficients::constant(1, 0.2, 1, 0.3, 0.1, -0.5, 0.5);
  const auto d = transform_coefficients(k, 0.5);
  CHECK(d.b2(0.0, 0.0, 0.0) == doctest::Approx(0.1 + 2 * 0.5 * 0.2));
  CHECK(d.c(0.0, 0.0, 0.0) == doctest::Approx(-0.25 + 0.15 - 0.5));
  const auto l = transform_coefficients(k, 0.5, nullptr, TransformVariant::Literal);
  CHECK(l.b2(0.0, 0.0, 0.0) == doctest::Approx(0.1));
}

TEST_CASE("boundary problem") {
  const auto k = ModelCoefficients::laplacian();
  const auto y = periodic_grid(0.0, two_pi, 64);
  TimeStepping ts;
  ts.dt = 1e-3;
  ts.t_end = 0.5;
  ts.record_every = 100;

  std::vector<double> s(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) s[j] = std::sin(y[j]);
  const auto sol = solve_boundary_problem(k, y, s, [](double, double) { return 0.0; }, ts);
  const std::size_t last = sol.t.size() - 1;
  CHECK(sol.t[last] == doctest::Approx(0.5));
  for (std::size_t j = 0; j < y.size(); ++j)
    CHECK(std::abs(sol.at(last, j) - std::exp(-0.5) * std::sin(y[j])) < 2e-3);

  const auto flat = solve_boundary_problem(k, y, std::vector<double>(y.size(), 0.7),
                                           [](double, double) { return 0.0; }, ts);
  for (double v : flat.frame(flat.t.size() - 1)) CHECK(v == doctest::Approx(0.7));

  ts.t_end = 0.1;
  const auto forced = solve_boundary_problem(k, y, std::vector<double>(y.size(), 0.0),
                                             [](double, double) { return 1.0; }, ts);
  for (double v : forced.frame(forced.t.size() - 1)) CHECK(v == doctest::Approx(0.1));

  CHECK_HMCF_ERROR(solve_boundary_problem(ModelCoefficients::constant(1, 0, 0.1, 0, 0, 0, 0.5), y, s,
                                          [](double, double) { return 0.0; }, ts),
                   ErrorCode::Ellipticity);
}

TEST_CASE("tilde problem") {
  const auto w = periodic_grid(0.0, two_pi, 48);
  const auto y = periodic_grid(0.0, two_pi, 48);
  TimeStepping ts;
  ts.dt = 1e-3;
  ts.t_end = 0.2;
  ts.record_every = 50;
  auto zero = [](double, double, double) { return 0.0; };

  std::vector<double> u0(w.size() * y.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) u0[i * y.size() + j] = std::sin(w[i]) * std::sin(y[j]);
  const auto sol = solve_tilde_problem(plain_tilde(0.0), w, y, u0, zero, WBoundary::Periodic, ts);
  const auto last = sol.frame(sol.t.size() - 1);
  for (std::size_t n = 0; n < u0.size(); ++n)
    CHECK(std::abs(last[n] - std::exp(-0.4) * u0[n]) < 2e-3);

  const auto still = solve_tilde_problem(plain_tilde(0.0), w, y, std::vector<double>(u0.size(), 0.0),
                                         zero, WBoundary::Periodic, ts);
  for (double v : still.values) CHECK(v == 0.0);

  const auto decay = solve_tilde_problem(plain_tilde(-1.0), w, y, std::vector<double>(u0.size(), 2.0),
                                         zero, WBoundary::Periodic, ts);
  for (double v : decay.frame(decay.t.size() - 1))
    CHECK(v == doctest::Approx(2.0 * std::exp(-0.2)).epsilon(1e-3));

  const auto narrow = linspace(0.0, 1.0, 5);
  CHECK_HMCF_ERROR(solve_tilde_problem(plain_tilde(0.0), narrow, y, std::vector<double>(5 * y.size(), 0.0),
                                       zero, WBoundary::Outflow, ts),
                   ErrorCode::Window);
}

TEST_CASE("reconstruction") {
  const double p = 0.5;
  const auto w = linspace(-3.0, 1.0, 9);
  const auto y = periodic_grid(0.0, two_pi, 8);
  const std::vector<double> t{0.0};
  Solution b{{}, y, t, {}}, tz{w, y, t, std::vector<double>(w.size() * y.size(), 0.0)};
  for (double yy : y) b.values.push_back(std::cos(yy));

  const auto f = reconstruct(b, tz, p);
  for (std::size_t i = 0; i < f.nz(); ++i)
    for (std::size_t j = 0; j < f.ny(); ++j) CHECK(f.at(0, i, j) == doctest::Approx(std::cos(y[j])));

  Solution b0{{}, y, t, std::vector<double>(y.size(), 0.0)};
  Solution one{w, y, t, std::vector<double>(w.size() * y.size(), 1.0)};
  const auto g = reconstruct(b0, one, p);
  for (std::size_t i = 0; i < g.nz(); ++i)
    CHECK(g.at(0, i, 3) == doctest::Approx(std::pow(g.z[i], p)));

  const auto lf = sample_log_field(p, w, y, t, [](double yy, double) { return std::sin(yy); },
                                   [](double ww, double yy, double) { return ww * std::cos(yy); });
  const auto back = log_decompose(reconstruct(lf), p, -3.0, 1.0);
  for (std::size_t n = 0; n < lf.tilde.size(); ++n)
    CHECK(back.tilde[n] == doctest::Approx(lf.tilde[n]).epsilon(1e-12));

  Solution other{{}, periodic_grid(0.0, two_pi, 7), t, std::vector<double>(7, 0.0)};
  CHECK_HMCF_ERROR(reconstruct(other, one, p), ErrorCode::GridMismatch);
}
