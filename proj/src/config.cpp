#include "hmcf/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hmcf {

const char* experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Flow: return "flow";
    case ExperimentKind::ModelPde: return "model_pde";
    case ExperimentKind::ChartsValidate: return "charts-validate";
    case ExperimentKind::Norms: return "norms";
    case ExperimentKind::Oracle: return "oracle";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::Flow, ExperimentKind::ModelPde, ExperimentKind::ChartsValidate,
                 ExperimentKind::Norms, ExperimentKind::Oracle})
    if (s == experiment_kind_name(k)) return k;
  return std::nullopt;
}

std::string ConfigResult::describe() const {
  std::string s;
  for (const auto& v : violations) s += v.key + ": " + v.message + "\n";
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

std::vector<ConfigViolation> validate_config(const RunConfig& c) {
  std::vector<ConfigViolation> v;
  auto need = [&](bool ok, const char* key, const char* msg) {
    if (!ok) v.push_back({key, msg});
  };
  need(c.flow.p > 0.0 && c.flow.p < 1.0, "p", "must satisfy 0 < p < 1");
  need(c.flow.dt_safety > 0.0 && c.flow.dt_safety <= 1.0, "dt_safety", "must lie in (0, 1]");
  need(c.flow.t_end >= 0.0, "t_end", "must be >= 0");
  need(c.flow.record_every >= 1, "record_every", "must be >= 1");
  need(c.flow.denom_eps >= 0.0, "denom_eps", "must be >= 0 (0 selects 1e-10/dx)");
  need(c.flow.clamp_tol >= 0.0, "clamp_tol", "must be >= 0 (0 selects 1e-8/dx)");
  need(c.n >= 5, "n", "must be >= 5");
  need(c.half_width > 0.0, "half_width", "must be > 0");
  need(c.R0 > 0.0, "R0", "must be > 0");
  need(c.r0 > 0.0, "r0", "must be > 0");
  if (c.initial == InitialData::FlatDisk)
    need(c.r0 < c.half_width, "r0", "flat disk must fit inside the domain (r0 < half_width)");
  need(c.q > 1.0, "q", "must be > 1");
  need(c.flat_tol > 0.0, "flat_tol", "must be > 0");
  need(c.ny >= 8, "ny", "must be >= 8");
  need(c.nw >= 8, "nw", "must be >= 8");
  need(c.w_max > c.w_min, "w_max", "must exceed w_min");
  need(c.dt > 0.0, "dt", "must be > 0");
  need(c.t_end_model >= 0.0, "t_end", "must be >= 0");
  need(c.samples >= 1, "samples", "must be >= 1");
  need(c.tolerance > 0.0, "tolerance", "must be > 0");
  need(c.alpha > 0.0 && c.alpha <= 1.0, "alpha", "must lie in (0, 1]");
  need(c.levels >= 2 && c.levels <= 6, "levels", "must lie in [2, 6]");
  need(c.random_pairs >= 0, "random_pairs", "must be >= 0");
  need(c.table_rows >= 2, "table_rows", "must be >= 2");
  need(!c.out.empty(), "out", "must not be empty");
  return v;
}

ConfigResult parse_config(std::string_view text) {
  ConfigResult res;
  RunConfig c;
  auto& viol = res.violations;
  bool have_kind = false, have_seed = false;

  using Setter = std::function<bool(std::string_view)>;
  auto dbl = [](double& d) { return Setter([&d](std::string_view s) { return parse_number(s, d); }); };
  auto integer = [](int& d) { return Setter([&d](std::string_view s) { return parse_number(s, d); }); };
  const std::map<std::string, Setter, std::less<>> setters = {
      {"kind",
       [&](std::string_view s) {
         auto k = parse_experiment_kind(s);
         if (k) c.kind = *k;
         have_kind = k.has_value();
         return have_kind;
       }},
      {"seed",
       [&](std::string_view s) {
         have_seed = parse_number(s, c.seed);
         return have_seed;
       }},
      {"out",
       [&](std::string_view s) {
         c.out = std::string(s);
         return !s.empty();
       }},
      {"initial",
       [&](std::string_view s) {
         if (s == "sphere") c.initial = InitialData::Sphere;
         else if (s == "flat_disk") c.initial = InitialData::FlatDisk;
         else return false;
         return true;
       }},
      {"integrator",
       [&](std::string_view s) {
         if (s == "euler") c.flow.integrator = Integrator::ForwardEuler;
         else if (s == "rk2") c.flow.integrator = Integrator::Rk2;
         else return false;
         return true;
       }},
      {"t_end",
       [&](std::string_view s) {
         double t;
         if (!parse_number(s, t)) return false;
         c.flow.t_end = c.t_end_model = t;
         return true;
       }},
      {"n", integer(c.n)},
      {"half_width", dbl(c.half_width)},
      {"R0", dbl(c.R0)},
      {"r0", dbl(c.r0)},
      {"q", dbl(c.q)},
      {"flat_tol", dbl(c.flat_tol)},
      {"dt_safety", dbl(c.flow.dt_safety)},
      {"denom_eps", dbl(c.flow.denom_eps)},
      {"clamp_tol", dbl(c.flow.clamp_tol)},
      {"record_every", integer(c.flow.record_every)},
      {"p", dbl(c.flow.p)},
      {"ny", integer(c.ny)},
      {"nw", integer(c.nw)},
      {"w_min", dbl(c.w_min)},
      {"w_max", dbl(c.w_max)},
      {"dt", dbl(c.dt)},
      {"samples", integer(c.samples)},
      {"tolerance", dbl(c.tolerance)},
      {"alpha", dbl(c.alpha)},
      {"levels", integer(c.levels)},
      {"random_pairs",
       [&](std::string_view s) { return parse_number(s, c.random_pairs); }},
      {"table_rows", integer(c.table_rows)},
  };

  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      viol.push_back({"line " + std::to_string(lineno), "expected key = value"});
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      viol.push_back({key, "unknown key"});
      continue;
    }
    if (!seen.insert(key).second) {
      viol.push_back({key, "given more than once"});
      continue;
    }
    if (!it->second(value)) viol.push_back({key, "invalid value '" + std::string(value) + "'"});
  }
  if (!have_kind && !seen.count("kind")) viol.push_back({"kind", "missing required field"});
  if (!have_seed && !seen.count("seed")) viol.push_back({"seed", "missing required field"});
  for (auto& v : validate_config(c)) viol.push_back(std::move(v));
  if (viol.empty()) res.config = c;
  return res;
}

std::string with_overrides(std::string_view text,
                           const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::string out;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view line = trim(raw);
    const auto eq = line.find('=');
    bool dropped = false;
    if (!line.empty() && line.front() != '#' && eq != std::string_view::npos) {
      const std::string_view key = trim(line.substr(0, eq));
      for (const auto& [k, v] : overrides) dropped = dropped || key == k;
    }
    if (!dropped) out += raw + "\n";
  }
  for (const auto& [k, v] : overrides) out += k + " = " + v + "\n";
  return out;
}

}  // namespace hmcf
