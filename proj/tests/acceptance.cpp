// Acceptance checks: one PASS/FAIL line per criterion. Exit status 0 iff
// every criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "hmcf/charts.hpp"
#include "hmcf/error.hpp"
#include "hmcf/experiment.hpp"
#include "hmcf/flow.hpp"
#include "hmcf/interface.hpp"
#include "hmcf/oracle.hpp"

using namespace hmcf;

namespace {

int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s %s  %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs `body`; module errors count as a failure of the criterion.
void criterion(const char* id, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    report(id, false, std::string("error ") + std::string(error_code_name(e.code())) + ": " +
                          e.what());
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void a1() {
  criterion("A1", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const double R0 = 1.0, t_end = 0.3;
    const auto grid = GridSpec::centered_square(129, 0.5);
    FlowConfig cfg;
    cfg.t_end = t_end;
    FlowState s{sphere_field(grid, R0, 1e-12), 0.0, 0, 0.0};
    const int c = 64;
    double worst = std::abs(s.field(c, c));
    long steps = 0;
    while (s.t < t_end) {
      s = step(s, cfg);
      ++steps;
      worst = std::max(worst, std::abs(s.field(c, c) - (R0 - sphere_radius(R0, s.t))));
    }
    const double secs = seconds_since(t0);
    report("A1", worst <= 5e-3 && secs <= 60.0,
           fmt("max apex error %.3e (<= 5e-3) over %.0f steps; runtime %.1f s (<= 60)", worst,
               static_cast<double>(steps), secs));
  });
}

// A2, A3 and A4 share the flat-disk run on 257^2 over [-0.75, 0.75]^2.
// A3: the container is the radius-2 ball on the same axis, lowered until it
// just holds the A2 body. The flow sees only derivatives of h, so the ball is
// evolved touching z = 0 and the lowering `shift` is applied when comparing.
void a2_a3_a4() {
  const double r0 = 0.5, p = 0.5;
  const double t_lo = 0.05 * r0 * r0, t_hi = 0.2 * r0 * r0;
  const auto grid = GridSpec::centered_square(257, 0.75);
  const double dx = grid.dx;
  const int checkpoints = 100;

  bool ok = true;
  std::string error;
  double worst_rel = 0.0, worst_cross = 0.0, worst_contain = -1e300;
  double lambda = 0.0, worst_margin = std::numeric_limits<double>::infinity();
  int in_window = 0;
  try {
    FlowConfig cfg;
    FlowState disk{flat_disk_field(grid, r0, 2.0, 1e-12), 0.0, 0, 0.0};
    FlowState sphere{sphere_field(grid, 2.0, 1e-12), 0.0, 0, 0.0};
    auto radial = sample_radial(1.0, 401, [r0](double rho) {
      const double d = std::max(rho - r0, 0.0);
      return d * d;
    });
    {
      const auto m = edge_star_margins(disk.field, p, 0.0);
      lambda = std::min(m.min_gradient, m.min_tangential);
    }
    const double shift = containment_check(disk.field, sphere.field);
    worst_contain = 0.0;  // touching at t = 0
    for (int k = 1; k <= checkpoints; ++k) {
      const double tk = t_hi * k / checkpoints;
      cfg.t_end = tk;
      while (disk.t < tk) disk = step(disk, cfg);
      while (sphere.t < tk) sphere = step(sphere, cfg);
      radial = radial_hmcf_run(radial, tk - t_hi * (k - 1) / checkpoints);

      worst_contain =
          std::max(worst_contain, containment_check(disk.field, sphere.field) - shift);
      const auto m = edge_star_margins(disk.field, p, lambda);
      worst_margin = std::min(worst_margin, std::min(m.min_gradient, m.min_tangential));
      if (tk >= t_lo - 1e-15) {
        const auto r = flat_radius_estimate(disk.field);
        if (!r) fail(ErrorCode::Sampling, "no flat side at t = " + std::to_string(tk));
        const double exact = circle_csf_radius(r0, tk);
        worst_rel = std::max(worst_rel, std::abs(*r - exact) / exact);
        worst_cross = std::max(worst_cross, std::abs(*r - radial.flat_radius()));
        ++in_window;
      }
    }
  } catch (const Error& e) {
    ok = false;
    error = std::string("error ") + std::string(error_code_name(e.code())) + ": " + e.what();
  }
  if (!ok) {
    report("A2", false, error);
    report("A3", false, error);
    report("A4", false, error);
    return;
  }
  report("A2", worst_rel <= 0.02 && worst_cross <= 3.0 * dx,
         fmt("max rel. radius error %.3e (<= 0.02) at %.0f times; max |2D - radial| %.3e "
             "(<= 3dx = %.3e)",
             worst_rel, in_window, worst_cross, 3.0 * dx));
  report("A3", worst_contain <= 2.0 * dx,
         fmt("max containment excess %.3e (<= 2dx = %.3e)", worst_contain, 2.0 * dx));
  report("A4", worst_margin >= 0.5 * lambda,
         fmt("lambda %.4f; min margin %.4f (>= 0.5 lambda = %.4f)", lambda, worst_margin,
             0.5 * lambda));
}

void a5() {
  criterion("A5", [] {
    const auto rep = splitting_study(0.5);
    report("A5", rep.derived_order >= 1.8,
           fmt("derived order %.3f (>= 1.8), fine residual %.3e; printed transform order "
               "%.3f, fine residual %.3e",
               rep.derived_order, rep.derived_fine.max_residual(), rep.literal_order,
               rep.literal_fine.max_residual()));
  });
}

void a6() {
  criterion("A6", [] {
    const auto rep = validate_charts(100, 2024, 1e-6);
    // The printed coefficient lists are adjudicated in the errata report.
    report("A6", rep.expansion_failures == 0,
           fmt("expansion max rel. error %.3e (<= 1e-6), %.0f failing samples; errata lists "
               "%.0f printed coefficients",
               rep.max_expansion_error, rep.expansion_failures,
               static_cast<double>(rep.coefficients.size())));
  });
}

void a7() {
  criterion("A7", [] {
    double worst = 0.0;
    std::string detail;
    for (const auto& st : schauder_studies(0.5, 0.5, 3, 10000, 7)) {
      worst = std::max(worst, st.spread());
      detail += st.solution + " " + fmt("%.3f", st.spread()) + "; ";
    }
    report("A7", worst <= 2.0, "ratio spread over two refinements (<= 2): " + detail);
  });
}

void a8() {
  criterion("A8", [] {
    const auto rows = norms_refinement_table(0.5, 0.5, 3, 10000, 7);
    double change = 0.0, growth = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < rows.size(); ++k) {
      change = std::max(change, std::abs(rows[k].smooth_total / rows[k - 1].smooth_total - 1.0));
      growth = std::min(growth, rows[k].singular_sup / rows[k - 1].singular_sup);
    }
    report("A8", change <= 0.05 && growth >= 2.0,
           fmt("smooth total change %.3e (<= 0.05); singular sup growth per level %.3f (>= 2)",
               change, growth));
  });
}

void a9() {
  criterion("A9", [] {
    const auto h = boundary_heat_study(256, 1e-4, 1.0);
    report("A9", h.l2_error <= 1e-3,
           fmt("L2 error %.3e (<= 1e-3) at t = %.2f, dy = 2pi/256, dt = 1e-4", h.l2_error,
               h.t_end));
  });
}

}  // namespace

int main() {
  a1();
  a2_a3_a4();
  a5();
  a6();
  a7();
  a8();
  a9();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
