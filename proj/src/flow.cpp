#include "hmcf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hmcf/analysis.hpp"
#include "hmcf/interface.hpp"

namespace hmcf {

void FlowConfig::validate() const {
  if (!(dt_safety > 0.0 && dt_safety <= 1.0))
    fail(ErrorCode::Config, "dt_safety must lie in (0, 1]");
  if (!(t_end >= 0.0)) fail(ErrorCode::Config, "t_end must be >= 0");
  if (denom_eps < 0.0) fail(ErrorCode::Config, "denom_eps must be > 0");
  if (record_every < 1) fail(ErrorCode::Config, "record_every must be >= 1");
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Config, "p must satisfy 0 < p < 1");
}

namespace {

struct Quotient {
  double numerator = 0.0;
  double denominator = 0.0;
  double value = 0.0;
  bool flat = false;
  Derivatives d;
};

double resolve_denom_eps(const HeightField& f, double denom_eps) {
  return denom_eps > 0.0 ? denom_eps : 1e-10 / std::min(f.dx(), f.dy());
}

bool stencil_touches_flat(const HeightField& f, int i, int j) {
  for (int a = std::max(i - 1, 0); a <= std::min(i + 1, f.nx() - 1); ++a)
    for (int b = std::max(j - 1, 0); b <= std::min(j + 1, f.ny() - 1); ++b)
      if (f.is_flat(a, b)) return true;
  return false;
}

// Removes the negative eigenvalue: H - l1 v1 v1^T.
void project_psd(Sym2& h) {
  const auto ev = h.eigenvalues();
  if (ev[0] >= 0.0) return;
  double vx = h.xy, vy = ev[0] - h.xx;
  if (std::hypot(vx, vy) < 1e-300) {
    vx = ev[0] - h.yy;
    vy = h.xy;
  }
  const double n = std::hypot(vx, vy);
  if (n < 1e-300) {  // diagonal
    h.xx = std::max(h.xx, 0.0);
    h.yy = std::max(h.yy, 0.0);
    return;
  }
  vx /= n;
  vy /= n;
  h.xx -= ev[0] * vx * vx;
  h.xy -= ev[0] * vx * vy;
  h.yy -= ev[0] * vy * vy;
}

Quotient graph_quotient(const HeightField& f, int i, int j, double eps) {
  Quotient q;
  q.d = derivatives_at(f, i, j);
  // Next to the flat side h is only C^{1,1}; the nine-point Hessian of such
  // a convex function can be indefinite there, so it is projected.
  if (stencil_touches_flat(f, i, j)) project_psd(q.d.hessian);
  const auto& g = q.d.gradient;
  const auto& h = q.d.hessian;
  q.numerator = h.det();
  q.denominator = (1.0 + g[1] * g[1]) * h.xx - 2.0 * g[0] * g[1] * h.xy +
                  (1.0 + g[0] * g[0]) * h.yy;
  const double tol = f.flat_tol();
  if (std::abs(q.numerator) <= tol && std::hypot(g[0], g[1]) <= tol) {
    q.flat = true;
    return q;
  }
  double den = q.denominator;
  if (std::abs(den) < eps) {
    if (den == 0.0 && std::abs(q.numerator) > tol)
      fail(ErrorCode::Degeneracy,
           "graph quotient denominator vanishes with nonzero numerator at node (" +
               std::to_string(i) + ", " + std::to_string(j) + ")");
    den = std::copysign(eps, den);
  }
  q.value = q.numerator / den;
  return q;
}

// Largest eigenvalue of d(quotient)/d(Hessian), the frozen-coefficient
// diffusivity of the linearised equation.
double effective_diffusivity(const Quotient& q) {
  const auto& g = q.d.gradient;
  const auto& h = q.d.hessian;
  const double alpha = 1.0 + g[1] * g[1];
  const double beta = g[0] * g[1];
  const double gamma = 1.0 + g[0] * g[0];
  const double den = q.denominator;
  const double n = q.numerator;
  Sym2 jac;
  jac.xx = h.yy / den - n * alpha / (den * den);
  jac.yy = h.xx / den - n * gamma / (den * den);
  jac.xy = 0.5 * (-2.0 * h.xy / den + 2.0 * beta * n / (den * den));
  return jac.eigenvalues()[1];
}

bool strictly_convex(const Quotient& q, double tol) {
  return !q.flat && q.numerator > tol && q.denominator > 0.0;
}

struct Rates {
  std::vector<double> rate;
  double min_denominator = std::numeric_limits<double>::infinity();
};

Rates evaluate_rates(const HeightField& f, double eps,
                     const CurvatureTolerances& ctol) {
  Rates r;
  r.rate.assign(f.values().size(), 0.0);
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.ny(); ++j) {
      const Quotient q = graph_quotient(f, i, j, eps);
      if (q.flat) continue;
      // Convexity guard: throws once the surface leaves the weakly convex
      // class beyond the clamp tolerance.
      harmonic_mean_velocity(principal_curvatures(q.d.gradient, q.d.hessian),
                             ctol);
      r.rate[f.index(i, j)] = std::max(q.value, 0.0);
      if (strictly_convex(q, f.flat_tol()))
        r.min_denominator = std::min(r.min_denominator, std::abs(q.denominator));
    }
  }
  return r;
}

CurvatureTolerances curvature_tolerances(const HeightField& f,
                                         const FlowConfig& cfg) {
  auto tol = CurvatureTolerances::for_spacing(std::min(f.dx(), f.dy()));
  if (cfg.clamp_tol > 0.0) tol.clamp_tol = cfg.clamp_tol;
  return tol;
}

std::vector<double> advance(const HeightField& f, const std::vector<double>& rate,
                            double dt) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += dt * rate[k];
  return v;
}

}  // namespace

double rhs_graph(const HeightField& field, int i, int j, double denom_eps) {
  const Quotient q = graph_quotient(field, i, j, resolve_denom_eps(field, denom_eps));
  return q.flat ? 0.0 : q.value;
}

double stable_dt(const HeightField& f, const FlowConfig& cfg) {
  const double eps = resolve_denom_eps(f, cfg.denom_eps);
  double dmax = 0.0;
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.ny(); ++j) {
      const Quotient q = graph_quotient(f, i, j, eps);
      if (!strictly_convex(q, f.flat_tol())) continue;
      dmax = std::max(dmax, effective_diffusivity(q));
    }
  }
  if (dmax <= 0.0) dmax = 1.0;
  const double h = std::min(f.dx(), f.dy());
  return cfg.dt_safety * h * h / (4.0 * dmax);
}

FlowState step(const FlowState& state, const FlowConfig& cfg) {
  const HeightField& f = state.field;
  const double eps = resolve_denom_eps(f, cfg.denom_eps);
  const auto ctol = curvature_tolerances(f, cfg);

  double dt = stable_dt(f, cfg);
  if (cfg.t_end > 0.0 && dt < 1e-14 * cfg.t_end)
    fail(ErrorCode::Stiffness, "time step underflow: dt = " + std::to_string(dt));
  bool last = false;
  if (cfg.t_end > state.t && state.t + dt >= cfg.t_end) {
    dt = cfg.t_end - state.t;
    last = true;
  }

  const Rates k1 = evaluate_rates(f, eps, ctol);
  std::vector<double> next = advance(f, k1.rate, dt);
  double min_den = k1.min_denominator;
  if (cfg.integrator == Integrator::Rk2) {
    const HeightField mid = f.with_values(next);
    const Rates k2 = evaluate_rates(mid, eps, ctol);
    for (std::size_t k = 0; k < next.size(); ++k)
      next[k] = f.values()[k] + 0.5 * dt * (k1.rate[k] + k2.rate[k]);
    min_den = std::min(min_den, k2.min_denominator);
  }

  FlowState out{f.with_values(std::move(next)), last ? cfg.t_end : state.t + dt,
                state.step_count + 1, min_den};
  if (out.field.flat_components() > f.flat_components())
    fail(ErrorCode::Convexity, "flow created a new flat component");
  return out;
}

Trajectory run(const HeightField& initial, const FlowConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  FlowState state{initial, 0.0, 0, std::numeric_limits<double>::infinity()};
  traj.snapshots.push_back(state);

  try {
    if (cfg.check_initial_star) {
      if (auto curve = extract_interface(initial, initial.flat_tol())) {
        const auto margins = check_star(pressure(initial, cfg.p), *curve, 0.0);
        if (!margins.passed)
          fail(ErrorCode::NonDegeneracy,
               "initial data violates the non-degeneracy condition (star)");
      }
    }
    while (state.t < cfg.t_end) {
      state = step(state, cfg);
      if (state.step_count % cfg.record_every == 0 || state.t >= cfg.t_end)
        traj.snapshots.push_back(state);
    }
  } catch (const Error& e) {
    traj.failure = FlowFailure{e.code(), e.what()};
  }
  return traj;
}

double containment_check(const HeightField& inner, const HeightField& outer) {
  if (!(inner.grid() == outer.grid()))
    fail(ErrorCode::GridMismatch, "containment_check needs a common grid");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < inner.values().size(); ++k)
    worst = std::max(worst, outer.values()[k] - inner.values()[k]);
  return worst;
}

double enclosed_volume(const HeightField& field, double top) {
  // trapezoid weights
  double vol = 0.0;
  for (int i = 0; i < field.nx(); ++i) {
    const double wi = (i == 0 || i == field.nx() - 1) ? 0.5 : 1.0;
    for (int j = 0; j < field.ny(); ++j) {
      const double wj = (j == 0 || j == field.ny() - 1) ? 0.5 : 1.0;
      vol += wi * wj * std::max(top - field(i, j), 0.0);
    }
  }
  return vol * field.dx() * field.dy();
}

}  // namespace hmcf
