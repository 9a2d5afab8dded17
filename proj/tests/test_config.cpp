#include "doctest.h"
#include "hmcf/config.hpp"

using namespace hmcf;

namespace {
bool names(const ConfigResult& r, const std::string& key) {
  for (const auto& v : r.violations)
    if (v.key == key) return true;
  return false;
}
}  // namespace

TEST_CASE("minimal sphere config gets defaults") {
  const auto r = parse_config("kind = flow\nseed = 1\n# comment\n\ninitial = sphere\n");
  REQUIRE(r.ok());
  const auto& c = *r.config;
  CHECK(c.kind == ExperimentKind::Flow);
  CHECK(c.seed == 1);
  CHECK(c.initial == InitialData::Sphere);
  CHECK(c.n == 129);
  CHECK(c.flow.p == doctest::Approx(0.5));
  CHECK(c.out == "out");
}

TEST_CASE("exponent out of range") {
  const auto r = parse_config("kind = flow\nseed = 1\np = 1.5\n");
  CHECK_FALSE(r.ok());
  CHECK(names(r, "p"));
  CHECK(r.describe().find("p") != std::string::npos);
}

TEST_CASE("empty input reports the missing fields") {
  const auto r = parse_config("");
  CHECK_FALSE(r.ok());
  CHECK(names(r, "kind"));
  CHECK(names(r, "seed"));
}

TEST_CASE("unknown keys and bad values are all reported") {
  const auto r = parse_config("kind = flow\nseed = x\ncolour = red\nn = -3\n");
  CHECK_FALSE(r.ok());
  CHECK(names(r, "seed"));
  CHECK(names(r, "colour"));
  CHECK(names(r, "n"));
}

TEST_CASE("overrides replace keys") {
  const std::string text = with_overrides("kind = flow\nseed = 1\nout = a\n", {{"out", "b"}, {"seed", "9"}});
  const auto r = parse_config(text);
  REQUIRE(r.ok());
  CHECK(r.config->out == "b");
  CHECK(r.config->seed == 9);
  CHECK(parse_experiment_kind("charts-validate") == ExperimentKind::ChartsValidate);
  CHECK_FALSE(parse_experiment_kind("bogus"));
}
