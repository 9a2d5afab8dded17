// Command-line front end; talks to the library through the C interface only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmcf/hmcf.h"

namespace {

struct Options {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
  auto* c = sub->add_option("--config", o.config_path, "run configuration (key = value lines)");
  if (config_required) c->required();
  c->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory (overrides the config)");
  sub->add_option("--seed", o.seed, "random seed (overrides the config)");
}

int execute(const Options& o, const char* forced_kind) {
  std::string text;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) {
      std::cerr << "error: cannot read " << o.config_path << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::vector<std::string> keys, values;
  if (forced_kind) keys.emplace_back("kind"), values.emplace_back(forced_kind);
  if (!o.out.empty()) keys.emplace_back("out"), values.emplace_back(o.out);
  if (o.seed) keys.emplace_back("seed"), values.emplace_back(std::to_string(*o.seed));
  std::vector<const char*> k, v;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    k.push_back(keys[i].c_str());
    v.push_back(values[i].c_str());
  }

  hmcf_config* cfg = nullptr;
  if (hmcf_status s = hmcf_config_parse(text.c_str(), k.data(), v.data(), k.size(), &cfg);
      s != HMCF_OK) {
    std::cerr << "invalid configuration (" << hmcf_status_name(s) << "):\n" << hmcf_last_error();
    return 2;
  }
  hmcf_report* rep = nullptr;
  const hmcf_status s = hmcf_run_experiment(cfg, &rep);
  hmcf_config_free(cfg);
  if (s != HMCF_OK) {
    std::cerr << "error (" << hmcf_status_name(s) << "): " << hmcf_last_error() << "\n";
    return 3;
  }
  const int code = hmcf_report_exit_code(rep);
  std::cout << "reason: " << hmcf_report_reason(rep) << "\n"
            << "summary: " << hmcf_report_summary_path(rep) << "\n";
  if (code != 0) std::cerr << "error: " << hmcf_report_message(rep) << "\n";
  hmcf_report_free(rep);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic mean curvature flow experiments"};
  app.require_subcommand(1);

  Options run_o, charts_o, norms_o, oracle_o;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  add_common(run, run_o, true);
  auto* charts = app.add_subcommand("validate-charts", "check the chart formulary, write errata");
  add_common(charts, charts_o, false);
  auto* norms = app.add_subcommand("norms", "Hoelder-norm refinement table");
  add_common(norms, norms_o, false);
  auto* oracle = app.add_subcommand("oracle-table", "tabulate the closed-form and radial oracles");
  add_common(oracle, oracle_o, false);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return execute(run_o, nullptr);
  if (charts->parsed()) return execute(charts_o, "charts-validate");
  if (norms->parsed()) return execute(norms_o, "norms");
  return execute(oracle_o, "oracle");
}
