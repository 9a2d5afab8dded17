#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hmcf/experiment.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace hmcf;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hmcf_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

nlohmann::json load_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

RunConfig config(const std::string& text, const fs::path& out) {
  const auto r = parse_config(text + "\nseed = 3\nout = " + out.string() + "\n");
  REQUIRE(r.ok());
  return *r.config;
}
}  // namespace

TEST_CASE("snapshot with a flat side writes three files") {
  const auto dir = scratch("snap3");
  const auto f = flat_disk_field(GridSpec::centered_square(65, 0.75), 0.5, 2.0, 1e-12);
  const auto files = emit_snapshot(FlowState{f, 0.0, 0, 0.0}, dir);
  CHECK(fs::exists(files.height));
  REQUIRE(files.curve);
  CHECK(fs::exists(*files.curve));
  CHECK(fs::exists(files.meta));
  const auto meta = load_json(files.meta);
  CHECK(meta.contains("star"));
  CHECK(meta["step"] == 0);

  const auto back = load_height_csv(files.height, f.grid(), f.flat_tol());
  for (std::size_t k = 0; k < f.values().size(); ++k)
    CHECK(std::memcmp(&back.values()[k], &f.values()[k], sizeof(double)) == 0);
}

TEST_CASE("height CSV round trips bitwise") {
  const auto dir = scratch("roundtrip");
  const auto f = sphere_field(GridSpec::centered_square(33, 0.5), 1.0, 1e-12);
  const auto files = emit_snapshot(FlowState{f, 0.0, 0, 0.0}, dir);
  const auto back = load_height_csv(files.height, f.grid(), f.flat_tol());
  for (std::size_t k = 0; k < f.values().size(); ++k)
    CHECK(std::memcmp(&back.values()[k], &f.values()[k], sizeof(double)) == 0);
}

TEST_CASE("no interface omits the curve file") {
  const auto dir = scratch("nocurve");
  const auto f = HeightField::sample(GridSpec::centered_square(17, 0.5), 1e-12,
                                     [](double x, double y) { return 1.0 + x * x + y * y; });
  const auto files = emit_snapshot(FlowState{f, 0.0, 0, 0.0}, dir);
  CHECK_FALSE(files.curve);
  CHECK(load_json(files.meta)["interface"] == "no interface");
}

TEST_CASE("consecutive snapshots have increasing time") {
  const auto dir = scratch("consecutive");
  FlowConfig cfg;
  cfg.t_end = 1.0;
  FlowState s{sphere_field(GridSpec::centered_square(17, 0.5), 1.0, 1e-12), 0.0, 0, 0.0};
  const auto a = emit_snapshot(s, dir);
  s = step(s, cfg);
  const auto b = emit_snapshot(s, dir);
  CHECK(a.meta != b.meta);
  CHECK(load_json(b.meta)["t"].get<double>() > load_json(a.meta)["t"].get<double>());
}

TEST_CASE("read_csv reports missing files") {
  CHECK_HMCF_ERROR(read_csv("/nonexistent/dir/file.csv"), ErrorCode::Io);
}

TEST_CASE("sphere run reports the apex error") {
  const auto dir = scratch("sphere_run");
  const auto rep = run_experiment(
      config("kind = flow\ninitial = sphere\nn = 33\nt_end = 0.01\nrecord_every = 50", dir));
  CHECK(rep.exit_code == 0);
  CHECK(rep.reason == "ok");
  const auto s = load_json(rep.summary_path);
  REQUIRE(s["result"].contains("max_apex_error"));
  CHECK(s["result"]["max_apex_error"].get<double>() < 5e-3);
  CHECK(fs::exists(dir / "snapshots"));
}

TEST_CASE("t_end = 0 gives a single snapshot") {
  const auto dir = scratch("t0");
  const auto rep = run_experiment(config("kind = flow\ninitial = sphere\nn = 17\nt_end = 0", dir));
  CHECK(rep.exit_code == 0);
  CHECK(load_json(rep.summary_path)["result"]["snapshots"] == 1);
}

TEST_CASE("charts run writes the errata") {
  const auto dir = scratch("charts");
  const auto rep = run_experiment(config("kind = charts-validate\nsamples = 4", dir));
  CHECK(rep.exit_code == 0);
  REQUIRE(fs::exists(dir / "errata.json"));
  CHECK(load_json(dir / "errata.json").contains("failing_coefficients"));
}

TEST_CASE("module errors become exit codes") {
  const auto dir = scratch("bad_sphere");
  // grid wider than the sphere's shadow
  const auto rep =
      run_experiment(config("kind = flow\ninitial = sphere\nn = 17\nhalf_width = 2\nt_end = 0", dir));
  CHECK(rep.exit_code == exit_code_for(ErrorCode::Domain));
  CHECK(rep.reason == "domain");
  CHECK(load_json(rep.summary_path)["reason"] == "domain");
}

TEST_CASE("identical configs give identical output") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const std::string body = "kind = flow\ninitial = sphere\nn = 17\nt_end = 0.002\nrecord_every = 5";
  run_experiment(config(body, a));
  run_experiment(config(body, b));
  for (const auto& e : fs::directory_iterator(a / "snapshots")) {
    std::ifstream x(e.path()), y(b / "snapshots" / e.path().filename());
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    CHECK(sx.str() == sy.str());
  }
}
