#include "hmcf/hmcf.h"

#include <string>
#include <vector>

#include "hmcf/config.hpp"
#include "hmcf/error.hpp"
#include "hmcf/experiment.hpp"
#include "hmcf/flow.hpp"
#include "hmcf/interface.hpp"
#include "hmcf/oracle.hpp"

struct hmcf_config {
  hmcf::RunConfig cfg;
  std::string kind;
};

struct hmcf_report {
  hmcf::ExperimentReport rep;
  std::string path;
};

struct hmcf_field {
  hmcf::HeightField field;
};

struct hmcf_trajectory {
  hmcf::Trajectory traj;
};

namespace {

thread_local std::string last_error;

hmcf_status to_status(hmcf::ErrorCode c) { return static_cast<hmcf_status>(static_cast<int>(c)); }

hmcf_status set_error(hmcf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
hmcf_status guarded(F&& f) {
  try {
    f();
    return HMCF_OK;
  } catch (const hmcf::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(HMCF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(HMCF_ERR_INTERNAL, e.what());
  }
}

hmcf_status null_arg(const char* what) {
  return set_error(HMCF_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* hmcf_last_error(void) { return last_error.c_str(); }

const char* hmcf_status_name(hmcf_status status) {
  if (status == HMCF_OK) return "ok";
  if (status == HMCF_ERR_INTERNAL) return "internal";
  if (status >= HMCF_ERR_INVALID_ARGUMENT && status <= HMCF_ERR_IO)
    return hmcf::error_code_name(static_cast<hmcf::ErrorCode>(status)).data();
  return "unknown";
}

// ---- configuration ----------------------------------------------------------

hmcf_status hmcf_config_parse(const char* text, const char* const* keys,
                              const char* const* values, size_t n, hmcf_config** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (n && (!keys || !values)) return null_arg("keys/values");
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> ov;
    for (size_t k = 0; k < n; ++k) {
      if (!keys[k] || !values[k]) hmcf::fail(hmcf::ErrorCode::InvalidArgument, "null override");
      ov.emplace_back(keys[k], values[k]);
    }
    const std::string src = hmcf::with_overrides(text ? text : "", ov);
    const auto res = hmcf::parse_config(src);
    if (!res.ok()) hmcf::fail(hmcf::ErrorCode::Config, res.describe());
    auto* c = new hmcf_config{*res.config, ""};
    c->kind = hmcf::experiment_kind_name(c->cfg.kind);
    *out = c;
  });
}

void hmcf_config_free(hmcf_config* cfg) { delete cfg; }
const char* hmcf_config_kind(const hmcf_config* cfg) { return cfg ? cfg->kind.c_str() : ""; }
const char* hmcf_config_out(const hmcf_config* cfg) { return cfg ? cfg->cfg.out.c_str() : ""; }
uint64_t hmcf_config_seed(const hmcf_config* cfg) { return cfg ? cfg->cfg.seed : 0; }

// ---- experiments -------------------------------------------------------------

hmcf_status hmcf_run_experiment(const hmcf_config* cfg, hmcf_report** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* r = new hmcf_report{hmcf::run_experiment(cfg->cfg), ""};
    r->path = r->rep.summary_path.string();
    *out = r;
  });
}

int hmcf_report_exit_code(const hmcf_report* rep) { return rep ? rep->rep.exit_code : -1; }
const char* hmcf_report_reason(const hmcf_report* rep) { return rep ? rep->rep.reason.c_str() : ""; }
const char* hmcf_report_message(const hmcf_report* rep) {
  return rep ? rep->rep.message.c_str() : "";
}
const char* hmcf_report_summary_json(const hmcf_report* rep) {
  return rep ? rep->rep.summary_json.c_str() : "";
}
const char* hmcf_report_summary_path(const hmcf_report* rep) { return rep ? rep->path.c_str() : ""; }
void hmcf_report_free(hmcf_report* rep) { delete rep; }

// ---- height fields -----------------------------------------------------------

hmcf_status hmcf_field_create(int nx, int ny, double dx, double dy, double x0, double y0,
                              const double* values, double flat_tol, hmcf_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!values) return null_arg("values");
  if (nx <= 0 || ny <= 0) return set_error(HMCF_ERR_INVALID_ARGUMENT, "grid size must be positive");
  return guarded([&] {
    hmcf::GridSpec g{nx, ny, dx, dy, x0, y0};
    std::vector<double> v(values, values + static_cast<size_t>(nx) * ny);
    *out = new hmcf_field{hmcf::HeightField(g, std::move(v), flat_tol)};
  });
}

hmcf_status hmcf_field_sphere(int n, double half_width, double R0, double flat_tol,
                              hmcf_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new hmcf_field{
        hmcf::sphere_field(hmcf::GridSpec::centered_square(n, half_width), R0, flat_tol)};
  });
}

hmcf_status hmcf_field_flat_disk(int n, double half_width, double r0, double q, double flat_tol,
                                 hmcf_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new hmcf_field{
        hmcf::flat_disk_field(hmcf::GridSpec::centered_square(n, half_width), r0, q, flat_tol)};
  });
}

hmcf_status hmcf_field_size(const hmcf_field* f, int* nx, int* ny) {
  if (!f || !nx || !ny) return null_arg("field/nx/ny");
  *nx = f->field.nx();
  *ny = f->field.ny();
  return HMCF_OK;
}

hmcf_status hmcf_field_values(const hmcf_field* f, double* out, size_t capacity) {
  if (!f || !out) return null_arg("field/out");
  const auto v = f->field.values();
  if (capacity < v.size())
    return set_error(HMCF_ERR_INVALID_ARGUMENT, "buffer holds " + std::to_string(capacity) +
                                                    " values, need " + std::to_string(v.size()));
  std::copy(v.begin(), v.end(), out);
  return HMCF_OK;
}

void hmcf_field_free(hmcf_field* f) { delete f; }

hmcf_status hmcf_extract_interface(const hmcf_field* f, double level, double* xy,
                                   size_t capacity, size_t* n_points) {
  if (!f || !n_points) return null_arg("field/n_points");
  return guarded([&] {
    *n_points = 0;
    const auto c = hmcf::extract_interface(f->field, level);
    if (!c) return;
    *n_points = c->size();
    if (capacity < c->size()) return;
    if (!xy) hmcf::fail(hmcf::ErrorCode::InvalidArgument, "xy must not be null");
    for (size_t k = 0; k < c->size(); ++k) {
      xy[2 * k] = (*c)[k][0];
      xy[2 * k + 1] = (*c)[k][1];
    }
  });
}

hmcf_status hmcf_flat_radius_estimate(const hmcf_field* f, double level, double* r, int* found) {
  if (!f || !r || !found) return null_arg("field/r/found");
  return guarded([&] {
    const auto est = hmcf::flat_radius_estimate(f->field, level);
    *found = est.has_value();
    *r = est.value_or(0.0);
  });
}

// ---- flow ----------------------------------------------------------------------

void hmcf_flow_params_default(hmcf_flow_params* params) {
  if (!params) return;
  const hmcf::FlowConfig d;
  *params = {d.dt_safety, d.t_end, d.denom_eps, d.record_every, d.p,
             d.integrator == hmcf::Integrator::Rk2 ? 1 : 0, d.clamp_tol,
             d.check_initial_star ? 1 : 0};
}

hmcf_status hmcf_flow_run(const hmcf_field* initial, const hmcf_flow_params* params,
                          hmcf_trajectory** out) {
  if (!initial || !params || !out) return null_arg("initial/params/out");
  *out = nullptr;
  hmcf_status run_status = HMCF_OK;
  const hmcf_status s = guarded([&] {
    hmcf::FlowConfig cfg;
    cfg.dt_safety = params->dt_safety;
    cfg.t_end = params->t_end;
    cfg.denom_eps = params->denom_eps;
    cfg.record_every = params->record_every;
    cfg.p = params->p;
    cfg.integrator = params->integrator ? hmcf::Integrator::Rk2 : hmcf::Integrator::ForwardEuler;
    cfg.clamp_tol = params->clamp_tol;
    cfg.check_initial_star = params->check_initial_star != 0;
    auto* t = new hmcf_trajectory{hmcf::run(initial->field, cfg)};
    if (t->traj.failure) run_status = set_error(to_status(t->traj.failure->code),
                                                t->traj.failure->message);
    *out = t;
  });
  return s != HMCF_OK ? s : run_status;
}

size_t hmcf_trajectory_count(const hmcf_trajectory* tr) {
  return tr ? tr->traj.snapshots.size() : 0;
}

hmcf_status hmcf_trajectory_time(const hmcf_trajectory* tr, size_t k, double* t) {
  if (!tr || !t) return null_arg("trajectory/t");
  if (k >= tr->traj.snapshots.size())
    return set_error(HMCF_ERR_INVALID_ARGUMENT, "snapshot index out of range");
  *t = tr->traj.snapshots[k].t;
  return HMCF_OK;
}

hmcf_status hmcf_trajectory_field(const hmcf_trajectory* tr, size_t k, hmcf_field** out) {
  if (!tr || !out) return null_arg("trajectory/out");
  *out = nullptr;
  if (k >= tr->traj.snapshots.size())
    return set_error(HMCF_ERR_INVALID_ARGUMENT, "snapshot index out of range");
  return guarded([&] { *out = new hmcf_field{tr->traj.snapshots[k].field}; });
}

void hmcf_trajectory_free(hmcf_trajectory* tr) { delete tr; }

// ---- oracles ---------------------------------------------------------------------

hmcf_status hmcf_sphere_radius(double R0, double t, double* R) {
  if (!R) return null_arg("R");
  return guarded([&] { *R = hmcf::sphere_radius(R0, t); });
}

hmcf_status hmcf_circle_csf_radius(double r0, double t, double* r) {
  if (!r) return null_arg("r");
  return guarded([&] { *r = hmcf::circle_csf_radius(r0, t); });
}

}  // extern "C"
