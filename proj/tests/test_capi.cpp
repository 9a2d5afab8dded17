// Exercises the shared library through its C interface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "hmcf/hmcf.h"

TEST_CASE("status names") {
  CHECK(std::string(hmcf_status_name(HMCF_OK)) == "ok");
  CHECK(std::string(hmcf_status_name(HMCF_ERR_CONVEXITY)) == "convexity");
  CHECK(std::string(hmcf_status_name(HMCF_ERR_INTERNAL)) == "internal");
  CHECK(std::string(hmcf_status_name(static_cast<hmcf_status>(77))) == "unknown");
}

TEST_CASE("config parsing and overrides") {
  hmcf_config* cfg = nullptr;
  const char* keys[] = {"out"};
  const char* vals[] = {"elsewhere"};
  REQUIRE(hmcf_config_parse("kind = oracle\nseed = 4\nout = here\n", keys, vals, 1, &cfg) == HMCF_OK);
  CHECK(std::string(hmcf_config_kind(cfg)) == "oracle");
  CHECK(std::string(hmcf_config_out(cfg)) == "elsewhere");
  CHECK(hmcf_config_seed(cfg) == 4);
  hmcf_config_free(cfg);

  CHECK(hmcf_config_parse("kind = flow\nseed = 1\np = 1.5\n", nullptr, nullptr, 0, &cfg) ==
        HMCF_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(hmcf_last_error()).find("p") != std::string::npos);
  CHECK(hmcf_config_parse("", nullptr, nullptr, 0, nullptr) == HMCF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle run through the C interface") {
  const auto dir = std::filesystem::temp_directory_path() / "hmcf_capi_oracle";
  std::filesystem::remove_all(dir);
  const std::string out = dir.string();
  const char* keys[] = {"out"};
  const char* vals[] = {out.c_str()};
  hmcf_config* cfg = nullptr;
  REQUIRE(hmcf_config_parse("kind = oracle\nseed = 1\n", keys, vals, 1, &cfg) == HMCF_OK);
  hmcf_report* rep = nullptr;
  REQUIRE(hmcf_run_experiment(cfg, &rep) == HMCF_OK);
  CHECK(hmcf_report_exit_code(rep) == 0);
  CHECK(std::string(hmcf_report_reason(rep)) == "ok");
  CHECK(std::filesystem::exists(hmcf_report_summary_path(rep)));
  CHECK(std::string(hmcf_report_summary_json(rep)).find("\"exit_code\"") != std::string::npos);
  hmcf_report_free(rep);
  hmcf_config_free(cfg);
}

TEST_CASE("fields and interfaces") {
  hmcf_field* f = nullptr;
  REQUIRE(hmcf_field_flat_disk(65, 0.75, 0.5, 2.0, 1e-12, &f) == HMCF_OK);
  int nx = 0, ny = 0;
  REQUIRE(hmcf_field_size(f, &nx, &ny) == HMCF_OK);
  CHECK(nx == 65);
  std::vector<double> v(static_cast<size_t>(nx) * ny);
  CHECK(hmcf_field_values(f, v.data(), 3) == HMCF_ERR_INVALID_ARGUMENT);
  REQUIRE(hmcf_field_values(f, v.data(), v.size()) == HMCF_OK);

  size_t n = 0;
  REQUIRE(hmcf_extract_interface(f, 1e-9, nullptr, 0, &n) == HMCF_OK);
  REQUIRE(n >= 8);
  std::vector<double> xy(2 * n);
  REQUIRE(hmcf_extract_interface(f, 1e-9, xy.data(), n, &n) == HMCF_OK);
  for (size_t k = 0; k < n; ++k) CHECK(std::abs(std::hypot(xy[2 * k], xy[2 * k + 1]) - 0.5) < 0.03);

  double r = 0.0;
  int found = 0;
  REQUIRE(hmcf_flat_radius_estimate(f, 0.0, &r, &found) == HMCF_OK);
  CHECK(found == 1);
  CHECK(r == doctest::Approx(0.5).epsilon(0.02));

  hmcf_field* copy = nullptr;
  REQUIRE(hmcf_field_create(nx, ny, 1.5 / 64, 1.5 / 64, -0.75, -0.75, v.data(), 1e-12, &copy) == HMCF_OK);
  hmcf_field_free(copy);
  v[0] = -1.0;
  CHECK(hmcf_field_create(nx, ny, 0.1, 0.1, 0, 0, v.data(), 1e-12, &copy) == HMCF_ERR_INVALID_ARGUMENT);
  CHECK(copy == nullptr);
  hmcf_field_free(f);

  CHECK(hmcf_field_sphere(17, 2.0, 1.0, 1e-12, &f) == HMCF_ERR_DOMAIN);
  CHECK(std::strlen(hmcf_last_error()) > 0);
}

TEST_CASE("flow run and trajectory access") {
  hmcf_field* f = nullptr;
  REQUIRE(hmcf_field_sphere(33, 0.5, 1.0, 1e-12, &f) == HMCF_OK);
  hmcf_flow_params params;
  hmcf_flow_params_default(&params);
  params.t_end = 0.01;
  params.record_every = 1000000;
  hmcf_trajectory* tr = nullptr;
  REQUIRE(hmcf_flow_run(f, &params, &tr) == HMCF_OK);
  REQUIRE(hmcf_trajectory_count(tr) == 2);
  double t = 0.0;
  REQUIRE(hmcf_trajectory_time(tr, 1, &t) == HMCF_OK);
  CHECK(t == doctest::Approx(0.01));
  CHECK(hmcf_trajectory_time(tr, 5, &t) == HMCF_ERR_INVALID_ARGUMENT);

  hmcf_field* last = nullptr;
  REQUIRE(hmcf_trajectory_field(tr, 1, &last) == HMCF_OK);
  std::vector<double> v(33 * 33);
  REQUIRE(hmcf_field_values(last, v.data(), v.size()) == HMCF_OK);
  double R = 0.0;
  REQUIRE(hmcf_sphere_radius(1.0, 0.01, &R) == HMCF_OK);
  CHECK(std::abs(v[16 * 33 + 16] - (1.0 - R)) < 5e-3);
  hmcf_field_free(last);
  hmcf_trajectory_free(tr);
  hmcf_field_free(f);
}

TEST_CASE("oracles and null arguments") {
  double r = 0.0;
  REQUIRE(hmcf_circle_csf_radius(1.0, 0.25, &r) == HMCF_OK);
  CHECK(r == doctest::Approx(std::sqrt(0.5)));
  CHECK(hmcf_circle_csf_radius(1.0, 0.5, &r) == HMCF_ERR_EXTINCT);
  CHECK(hmcf_sphere_radius(1.0, 0.5, nullptr) == HMCF_ERR_INVALID_ARGUMENT);
  CHECK(hmcf_run_experiment(nullptr, nullptr) == HMCF_ERR_INVALID_ARGUMENT);
  hmcf_field_free(nullptr);
  hmcf_trajectory_free(nullptr);
  hmcf_report_free(nullptr);
  hmcf_config_free(nullptr);
}
