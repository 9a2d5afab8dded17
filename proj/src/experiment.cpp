#include "hmcf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hmcf/charts.hpp"
#include "hmcf/error.hpp"
#include "hmcf/interface.hpp"
#include "hmcf/model_pde.hpp"
#include "hmcf/oracle.hpp"
#include "json.hpp"

namespace hmcf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann prints doubles with the shortest round-trip form, which is exact.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

std::string step_tag(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06ld", step);
  return buf;
}

std::optional<Curve> interface_of(const HeightField& f) {
  return extract_interface(f, f.flat_tol());
}


json margins_json(const StarMargins& m) {
  return {{"min_gradient", number_or_null(m.min_gradient)},
          {"min_tangential", number_or_null(m.min_tangential)},
          {"lambda", m.lambda},
          {"passed", m.passed},
          {"samples", m.samples},
          {"offset", m.offset}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

SnapshotFiles emit_snapshot(const FlowState& state, const fs::path& dir, double p,
                            double lambda) {
  ensure_dir(dir);
  const auto& f = state.field;
  const std::string stem = "snapshot_" + step_tag(state.step_count);
  SnapshotFiles files;

  std::string csv;
  csv.reserve(static_cast<std::size_t>(f.nx()) * f.ny() * 24);
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.ny(); ++j) {
      if (j) csv += ',';
      csv += fmt17(f(i, j));
    }
    csv += '\n';
  }
  files.height = dir / (stem + "_height.csv");
  write_text(files.height, csv);

  json meta = {{"t", state.t}, {"step", state.step_count}};
  std::optional<Curve> curve;
  try {
    curve = interface_of(f);
  } catch (const Error& e) {
    meta["interface_error"] = std::string(error_code_name(e.code()));
  }
  if (curve) {
    std::string c = "x,y\n";
    for (const auto& v : curve->points()) c += fmt17(v[0]) + "," + fmt17(v[1]) + "\n";
    files.curve = dir / (stem + "_curve.csv");
    write_text(*files.curve, c);
    try {
      meta["star"] = margins_json(edge_star_margins(f, p, lambda));
    } catch (const Error& e) {
      meta["star"] = {{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    }
  } else {
    meta["interface"] = "no interface";
  }
  files.meta = dir / (stem + "_meta.json");
  write_text(files.meta, meta.dump(2) + "\n");
  return files;
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) fail(ErrorCode::Io, "non-numeric cell '" + cell + "' in " + path.string());
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HeightField load_height_csv(const fs::path& path, const GridSpec& grid, double flat_tol) {
  const auto rows = read_csv(path);
  if (rows.size() != static_cast<std::size_t>(grid.nx))
    fail(ErrorCode::GridMismatch, "height CSV has " + std::to_string(rows.size()) + " rows");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(grid.ny))
      fail(ErrorCode::GridMismatch, "height CSV row length mismatch");
    v.insert(v.end(), r.begin(), r.end());
  }
  return HeightField(grid, std::move(v), flat_tol);
}

// ---------------------------------------------------------------------------
// Initial data
// ---------------------------------------------------------------------------

HeightField sphere_field(const GridSpec& grid, double R0, double flat_tol, Vec2 center) {
  if (!(R0 > 0.0)) fail(ErrorCode::InvalidArgument, "sphere radius must be > 0");
  return HeightField::sample(grid, flat_tol, [&](double x, double y) {
    const double r2 = (x - center[0]) * (x - center[0]) + (y - center[1]) * (y - center[1]);
    if (r2 >= R0 * R0) fail(ErrorCode::Domain, "grid node outside the sphere's shadow");
    return R0 - std::sqrt(R0 * R0 - r2);
  });
}

HeightField flat_disk_field(const GridSpec& grid, double r0, double q, double flat_tol) {
  return HeightField::sample(grid, flat_tol, [&](double x, double y) {
    const double d = std::max(std::hypot(x, y) - r0, 0.0);
    return std::pow(d, q);
  });
}

HeightField initial_field(const RunConfig& cfg) {
  const auto grid = GridSpec::centered_square(cfg.n, cfg.half_width);
  return cfg.initial == InitialData::Sphere ? sphere_field(grid, cfg.R0, cfg.flat_tol)
                                            : flat_disk_field(grid, cfg.r0, cfg.q, cfg.flat_tol);
}

// ---------------------------------------------------------------------------
// Studies
// ---------------------------------------------------------------------------

// The zero contour sits inside the numerical layer and biases |Dg| low.
StarMargins edge_star_margins(const HeightField& f, double p, double lambda) {
  const auto c = extract_interface(f, edge_level(f));
  if (!c) fail(ErrorCode::Sampling, "no contour at the edge level");
  return check_star(pressure(f, p), *c, lambda);
}

HeatStudy boundary_heat_study(std::size_t ny, double dt, double t_end) {
  const auto y = periodic_grid(0.0, 2.0 * std::numbers::pi, ny);
  std::vector<double> u0(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) u0[j] = std::sin(y[j]);
  TimeStepping ts;
  ts.dt = dt;
  ts.t_end = t_end;
  ts.record_every = std::numeric_limits<int>::max();
  const auto sol = solve_boundary_problem(ModelCoefficients::laplacian(), y, u0,
                                          [](double, double) { return 0.0; }, ts);
  const std::size_t kt = sol.t.size() - 1;
  HeatStudy h;
  h.t_end = sol.t[kt];
  const double dy = y[1] - y[0];
  double l2 = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = sol.at(kt, j) - std::exp(-h.t_end) * std::sin(y[j]);
    l2 += e * e * dy;
    h.max_error = std::max(h.max_error, std::abs(e));
  }
  h.l2_error = std::sqrt(l2);
  return h;
}

DiscrepancyReport splitting_study(double p) {
  const double pi = std::numbers::pi;
  ModelCoefficients K = ModelCoefficients::constant(1.0, 0.2, 1.0, 0.3, 0.1, -0.5, 0.5);
  K.a22 = [](double z, double, double) { return 1.0 + 0.5 * z / (1.0 + z); };
  K.c = [](double z, double, double) { return -0.5 - z / (1.0 + z); };
  BoundaryTrace f0{[](double y, double t) { return std::exp(-t) * std::sin(y); },
                   [](double y, double t) { return std::exp(-t) * std::cos(y); },
                   [](double y, double t) { return -std::exp(-t) * std::sin(y); }};
  const Field3 tilde = [](double w, double y, double t) {
    return std::cos(y + t) / (1.0 + std::exp(w));
  };
  return discrepancy_report(K, p, f0, tilde, -4.0, 1.0, 2.0 * pi, 0.5, 21, 17, 9);
}

std::vector<NormsRow> norms_refinement_table(double alpha, double p, int levels,
                                             long random_pairs, std::uint64_t seed) {
  std::vector<NormsRow> rows;
  NormOptions opts;
  opts.seed = seed;
  opts.random_pairs = random_pairs;
  for (int k = 0; k < levels; ++k) {
    const double scale = std::ldexp(1.0, k);
    NormsRow r;
    r.level = k;
    r.w_min = -4.0 * scale;
    const double dw = 0.25 / scale;
    r.nw = static_cast<std::size_t>(std::lround((1.0 - r.w_min) / dw)) + 1;
    r.ny = static_cast<std::size_t>(16 * scale);
    const auto w = linspace(r.w_min, 1.0, r.nw);
    const auto y = periodic_grid(0.0, 2.0 * std::numbers::pi, r.ny);
    const std::vector<double> t{0.0};

    const auto smooth = sample_log_field(
        p, w, y, t, [](double, double) { return 0.0; },
        [](double ww, double yy, double) {
          const double z = std::exp(ww);
          return (1.0 + z * std::exp(-z)) * std::cos(yy);
        });
    r.smooth_total = holder_norm(smooth, alpha, NormMode::C2AlphaP, opts).total;

    // z^{p/2} = z^p * z^{-p/2}
    const auto singular = sample_log_field(
        p, w, y, t, [](double, double) { return 0.0; },
        [p](double ww, double, double) { return std::exp(-0.5 * p * ww); });
    r.singular_sup = holder_norm(singular, alpha, NormMode::C0p, opts).total;
    rows.push_back(r);
  }
  return rows;
}

double SchauderStudy::spread() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  return rows.empty() || !(lo > 0.0) ? std::numeric_limits<double>::infinity() : hi / lo;
}

std::vector<SchauderStudy> schauder_studies(double alpha, double p, int levels,
                                            long random_pairs, std::uint64_t seed) {
  struct Manufactured {
    const char* name;
    std::function<double(double, double, double)> f;
  };
  const std::vector<Manufactured> solutions = {
      {"trig",
       [p](double z, double y, double t) {
         return std::sin(y + t) + std::pow(z, p) * std::cos(y) / (1.0 + z);
       }},
      {"decay",
       [p](double z, double y, double t) {
         return std::exp(-t) * std::cos(y) + std::pow(z, p) * std::exp(-z) * std::sin(2.0 * y + t);
       }},
      {"mixed",
       [p](double z, double y, double t) {
         return (1.0 + 0.5 * std::sin(y)) * t +
                std::pow(z, p) * (1.0 + z) * std::exp(-z) * std::cos(y - t);
       }},
  };
  const auto K = ModelCoefficients::constant(1.0, 0.2, 1.0, 0.1, 0.1, 0.0, 0.5);
  const double w_lo = -6.0, w_hi = 1.0;
  const ZYT P{0.0, 0.0, 1.0};

  NormOptions opts;
  opts.seed = seed;
  opts.random_pairs = random_pairs;

  std::vector<SchauderStudy> out;
  for (const auto& m : solutions) {
    SchauderStudy st;
    st.solution = m.name;
    for (int k = 0; k < levels; ++k) {
      const double scale = std::ldexp(1.0, k);
      const auto nw = static_cast<std::size_t>(std::lround((w_hi - w_lo) * 4.0 * scale)) + 1;
      const auto z = log_uniform_z(w_lo, w_hi, nw);
      const auto y = linspace(-1.0, 1.0, static_cast<std::size_t>(8 * scale) + 1);
      const auto t = linspace(0.0, 1.0, static_cast<std::size_t>(4 * scale) + 1);
      const auto field = sample_half_space(z, y, t, m.f);
      const auto Lf = apply_model_operator(K, field);
      const auto fl = log_decompose(field, p, w_lo - 1e-9, w_hi + 1e-9);
      const auto lfl = log_decompose(Lf, p, w_lo - 1e-9, w_hi + 1e-9);

      SchauderRow r;
      r.level = k;
      opts.window = schauder_box(fl, P, 0.5);
      r.numerator = holder_norm(fl, alpha, NormMode::C2AlphaP, opts).total;
      opts.window = schauder_box(fl, P, 1.0);
      r.c0 = holder_norm(fl, alpha, NormMode::C0p, opts).total;
      opts.window = schauder_box(lfl, P, 1.0);
      r.lf_norm = holder_norm(lfl, alpha, NormMode::CAlphaP, opts).total;
      r.ratio = r.numerator / (r.c0 + r.lf_norm);
      st.rows.push_back(r);
    }
    out.push_back(std::move(st));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

int exit_code_for(ErrorCode code) { return 10 + static_cast<int>(code); }

namespace {

json flow_pipeline(const RunConfig& cfg, std::optional<Error>& failure) {
  const fs::path dir = fs::path(cfg.out) / "snapshots";
  const auto initial = initial_field(cfg);
  const double p = cfg.flow.p;
  json s;

  // lambda from the initial margins (flat-sided data only)
  double lambda = 0.0;
  if (cfg.initial == InitialData::FlatDisk) {
    if (interface_of(initial)) {
      const auto m = edge_star_margins(initial, p, 0.0);
      lambda = std::min(m.min_gradient, m.min_tangential);
    }
  }
  FlowConfig fc = cfg.flow;
  fc.check_initial_star = cfg.initial == InitialData::FlatDisk;
  const auto traj = run(initial, fc);

  json ts = json::array(), apex = json::array(), radius = json::array(),
       csf = json::array(), margin = json::array();
  double max_apex_error = 0.0, max_rel_radius_error = 0.0, min_margin_ratio =
                                                              std::numeric_limits<double>::infinity();
  const auto& g = initial.grid();
  const int ic = static_cast<int>(std::lround(-g.x0 / g.dx));
  const int jc = static_cast<int>(std::lround(-g.y0 / g.dy));
  for (const auto& st : traj.snapshots) {
    emit_snapshot(st, dir, p, lambda);
    ts.push_back(st.t);
    if (cfg.initial == InitialData::Sphere) {
      const double h = st.field(ic, jc);
      const double exact = cfg.R0 - sphere_radius(cfg.R0, st.t);
      apex.push_back(h);
      max_apex_error = std::max(max_apex_error, std::abs(h - exact));
    } else {
      const auto r = flat_radius_estimate(st.field);
      radius.push_back(r ? json(*r) : json(nullptr));
      const double t_ext = 0.5 * cfg.r0 * cfg.r0;
      const double rc = st.t < t_ext ? circle_csf_radius(cfg.r0, st.t) : 0.0;
      csf.push_back(rc);
      if (r && st.t >= 0.05 * cfg.r0 * cfg.r0 && st.t <= 0.2 * cfg.r0 * cfg.r0 + 1e-15)
        max_rel_radius_error = std::max(max_rel_radius_error, std::abs(*r - rc) / rc);
      if (lambda > 0.0) {
        double ratio = std::numeric_limits<double>::quiet_NaN();
        try {
          if (interface_of(st.field)) {
            const auto m = edge_star_margins(st.field, p, lambda);
            ratio = std::min(m.min_gradient, m.min_tangential) / lambda;
          }
        } catch (const Error&) {
        }
        margin.push_back(number_or_null(ratio));
        if (std::isfinite(ratio)) min_margin_ratio = std::min(min_margin_ratio, ratio);
      }
    }
  }
  s["snapshots"] = traj.snapshots.size();
  s["t"] = ts;
  s["final_t"] = traj.snapshots.empty() ? 0.0 : traj.snapshots.back().t;
  s["steps"] = traj.snapshots.empty() ? 0 : traj.snapshots.back().step_count;
  if (cfg.initial == InitialData::Sphere) {
    s["apex_height"] = apex;
    s["max_apex_error"] = max_apex_error;
  } else {
    s["flat_radius"] = radius;
    s["csf_radius"] = csf;
    s["max_relative_radius_error"] = max_rel_radius_error;
    s["star_lambda"] = lambda;
    s["star_margin_ratio"] = margin;
    s["min_star_margin_ratio"] = number_or_null(min_margin_ratio);
  }
  if (traj.failure) failure = Error(traj.failure->code, traj.failure->message);
  return s;
}

json model_pde_pipeline(const RunConfig& cfg) {
  json s;
  const double pi = std::numbers::pi;
  {
    const auto h = boundary_heat_study(static_cast<std::size_t>(cfg.ny), cfg.dt, cfg.t_end_model);
    s["boundary"] = {{"ny", cfg.ny}, {"dt", cfg.dt}, {"t_end", h.t_end},
                     {"l2_error", h.l2_error}, {"max_error", h.max_error}};
  }
  // transformed problem: a11 = a22 = 1 on a periodic box, exact e^{-2t} sin w sin y
  {
    const auto nb = static_cast<std::size_t>(cfg.nw);
    const auto w = periodic_grid(0.0, 2.0 * pi, nb), y = periodic_grid(0.0, 2.0 * pi, nb);
    TransformedCoefficients tc;
    tc.a11 = tc.a22 = constant_field(1.0);
    tc.a12 = tc.b1 = tc.b2 = tc.c = tc.G = constant_field(0.0);
    std::vector<double> u0(nb * nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) u0[i * nb + j] = std::sin(w[i]) * std::sin(y[j]);
    TimeStepping ts;
    ts.dt = std::max(cfg.dt, 1e-3);
    ts.t_end = std::min(cfg.t_end_model, 0.5);
    ts.record_every = std::numeric_limits<int>::max();
    const auto sol = solve_tilde_problem(tc, w, y, u0, constant_field(0.0), WBoundary::Periodic, ts);
    const std::size_t kt = sol.t.size() - 1;
    const double decay = std::exp(-2.0 * sol.t[kt]);
    double linf = 0.0;
    for (std::size_t i = 0; i < nb * nb; ++i)
      linf = std::max(linf, std::abs(sol.at(kt, i) - decay * u0[i]));
    s["tilde"] = {{"n", nb}, {"dt", ts.dt}, {"t_end", sol.t[kt]}, {"max_error", linf}};
  }
  {
    const auto rep = splitting_study(cfg.flow.p);
    write_text(fs::path(cfg.out) / "discrepancy.json", rep.to_json() + "\n");
    s["splitting"] = {{"derived_order", rep.derived_order},
                      {"literal_order", rep.literal_order},
                      {"derived_fine_residual", rep.derived_fine.max_residual()},
                      {"literal_fine_residual", rep.literal_fine.max_residual()}};
  }
  return s;
}

json charts_pipeline(const RunConfig& cfg) {
  const auto rep = validate_charts(cfg.samples, cfg.seed, cfg.tolerance);
  write_text(fs::path(cfg.out) / "errata.json", rep.to_json() + "\n");
  return {{"samples", rep.samples},
          {"tolerance", rep.tolerance},
          {"max_expansion_error", rep.max_expansion_error},
          {"expansion_failures", rep.expansion_failures},
          {"printed_coefficients_disagreeing", rep.coefficients.size()}};
}

json norms_pipeline(const RunConfig& cfg) {
  const auto rows = norms_refinement_table(cfg.alpha, cfg.flow.p, cfg.levels, cfg.random_pairs,
                                           cfg.seed);
  std::string csv = "level,w_min,nw,ny,smooth_total,singular_sup\n";
  json table = json::array();
  for (const auto& r : rows) {
    csv += std::to_string(r.level) + "," + fmt17(r.w_min) + "," + std::to_string(r.nw) + "," +
           std::to_string(r.ny) + "," + fmt17(r.smooth_total) + "," + fmt17(r.singular_sup) + "\n";
    table.push_back({{"level", r.level}, {"w_min", r.w_min}, {"nw", r.nw}, {"ny", r.ny},
                     {"smooth_total", r.smooth_total}, {"singular_sup", r.singular_sup}});
  }
  write_text(fs::path(cfg.out) / "norms.csv", csv);
  json s = {{"alpha", cfg.alpha}, {"p", cfg.flow.p}, {"table", table}};
  if (rows.size() >= 2) {
    double smooth_ratio = 0.0, singular_growth = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < rows.size(); ++k) {
      smooth_ratio = std::max(smooth_ratio, std::abs(rows[k].smooth_total / rows[k - 1].smooth_total - 1.0));
      singular_growth = std::min(singular_growth, rows[k].singular_sup / rows[k - 1].singular_sup);
    }
    s["max_smooth_relative_change"] = smooth_ratio;
    s["min_singular_growth"] = singular_growth;
  }
  json schauder = json::array();
  for (const auto& st : schauder_studies(cfg.alpha, cfg.flow.p, cfg.levels, cfg.random_pairs,
                                         cfg.seed)) {
    json rs = json::array();
    for (const auto& r : st.rows)
      rs.push_back({{"level", r.level}, {"numerator", r.numerator}, {"c0", r.c0},
                    {"lf_norm", r.lf_norm}, {"ratio", r.ratio}});
    schauder.push_back({{"solution", st.solution}, {"rows", rs}, {"spread", st.spread()}});
  }
  s["schauder"] = schauder;
  return s;
}

json oracle_pipeline(const RunConfig& cfg) {
  const int n = cfg.table_rows;
  const double t_sphere = 0.9 * cfg.R0 * cfg.R0, t_circle = 0.2 * cfg.r0 * cfg.r0;
  std::string csv = "t,sphere_radius,circle_csf_radius,radial_flat_radius\n";
  json rows = json::array();
  // radial oracle for ((rho - r0)_+)^q on [0, 2 r0]
  const int nr = 401;
  const double r0 = cfg.r0, q = cfg.q;
  auto prof = sample_radial(2.0 * r0, nr, [r0, q](double rho) {
    return std::pow(std::max(rho - r0, 0.0), q);
  });
  double t_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    const double tc = s * t_circle;
    prof = radial_hmcf_run(prof, tc - t_prev);
    t_prev = tc;
    const double ts = s * t_sphere;
    const double R = sphere_radius(cfg.R0, ts), r = circle_csf_radius(r0, tc);
    const double rf = prof.flat_radius();
    csv += fmt17(tc) + "," + fmt17(R) + "," + fmt17(r) + "," + fmt17(rf) + "\n";
    rows.push_back({{"t_sphere", ts}, {"sphere_radius", R}, {"t_circle", tc},
                    {"circle_csf_radius", r}, {"radial_flat_radius", rf}});
  }
  write_text(fs::path(cfg.out) / "oracle_table.csv", csv);
  return {{"R0", cfg.R0}, {"r0", cfg.r0}, {"rows", rows}};
}

}  // namespace

ExperimentReport run_experiment(const RunConfig& cfg) {
  ExperimentReport rep;
  json summary = {{"kind", experiment_kind_name(cfg.kind)}, {"seed", cfg.seed}};
  std::optional<Error> failure;
  try {
    ensure_dir(cfg.out);
    json body;
    switch (cfg.kind) {
      case ExperimentKind::Flow: body = flow_pipeline(cfg, failure); break;
      case ExperimentKind::ModelPde: body = model_pde_pipeline(cfg); break;
      case ExperimentKind::ChartsValidate: body = charts_pipeline(cfg); break;
      case ExperimentKind::Norms: body = norms_pipeline(cfg); break;
      case ExperimentKind::Oracle: body = oracle_pipeline(cfg); break;
    }
    summary["result"] = body;
  } catch (const Error& e) {
    failure = e;
  } catch (const std::exception& e) {
    failure = Error(ErrorCode::InvalidArgument, e.what());
  }
  if (failure) {
    rep.exit_code = exit_code_for(failure->code());
    rep.reason = std::string(error_code_name(failure->code()));
    rep.message = failure->what();
  } else {
    rep.reason = "ok";
  }
  summary["exit_code"] = rep.exit_code;
  summary["reason"] = rep.reason;
  if (!rep.message.empty()) summary["message"] = rep.message;
  rep.summary_json = summary.dump(2);
  rep.summary_path = fs::path(cfg.out) / "summary.json";
  try {
    write_text(rep.summary_path, rep.summary_json + "\n");
  } catch (const Error& e) {
    if (rep.exit_code == 0) {
      rep.exit_code = exit_code_for(e.code());
      rep.reason = std::string(error_code_name(e.code()));
      rep.message = e.what();
    }
  }
  return rep;
}

}  // namespace hmcf
