#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "ellpolylog/cli.hpp"
#include "ellpolylog/errors.hpp"
#include "json.hpp"

using namespace ellpolylog;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "ellpolylog_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("parse_complex forms") {
  CHECK(parse_complex("0.2") == Complex(0.2, 0.0));
  CHECK(parse_complex("1.3i") == Complex(0.0, 1.3));
  CHECK(parse_complex("0+1i") == Complex(0.0, 1.0));
  CHECK(parse_complex("-0.3-0.2i") == Complex(-0.3, -0.2));
  CHECK(parse_complex("(0.2,1.1)") == Complex(0.2, 1.1));
  CHECK(parse_complex("1e-3+2e-1i") == Complex(1e-3, 0.2));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex(""), ConfigError);
}

TEST_CASE("suite and target names round-trip") {
  for (const auto& name : suite_names()) CHECK(suite_name(parse_suite(name)) == name);
  CHECK_THROWS_AS(parse_suite("nope"), ConfigError);
  CHECK_THROWS_AS(parse_eval_target("G"), ConfigError);
  CHECK(parse_eval_target("L_form") == EvalTarget::L_form);
}

TEST_CASE("tolerance overrides") {
  RunConfig cfg;
  apply_tolerance_override("closedness=1e-3", cfg);
  CHECK(cfg.tolerance_overrides.at("closedness") == 1e-3);
  CHECK_THROWS_AS(apply_tolerance_override("closedness", cfg), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_override("bogus=1", cfg), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_override("heat=-1", cfg), ConfigError);
}

TEST_CASE("config files") {
  SUBCASE("key = value") {
    const auto path = temp_file("kv.cfg", "# comment\nseed = 9\nparallelism=3\ntolerance.heat = 2e-6\nordering = box\n");
    RunConfig cfg;
    load_config_file(path, cfg);
    CHECK(cfg.seed == 9);
    CHECK(cfg.parallelism == 3);
    CHECK(cfg.tolerance_overrides.at("heat") == 2e-6);
    CHECK(cfg.truncation.ordering == LatticeOrdering::box);
    std::remove(path.c_str());
  }
  SUBCASE("json") {
    const auto path = temp_file("cfg.json", R"({"seed": 4, "diff_step": 5e-4, "tolerance": {"curvature": 1e-3}})");
    RunConfig cfg;
    load_config_file(path, cfg);
    CHECK(cfg.seed == 4);
    CHECK(cfg.diff.step == 5e-4);
    CHECK(cfg.tolerance_overrides.at("curvature") == 1e-3);
    std::remove(path.c_str());
  }
  SUBCASE("bad key") {
    const auto path = temp_file("bad.cfg", "colour = blue\n");
    RunConfig cfg;
    CHECK_THROWS_AS(load_config_file(path, cfg), ConfigError);
    std::remove(path.c_str());
  }
  RunConfig cfg;
  CHECK_THROWS_AS(load_config_file("/nonexistent/cfg", cfg), ConfigError);
}

TEST_CASE("invalid run config") {
  RunConfig cfg;
  cfg.parallelism = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.parallelism = 1;
  cfg.diff.step = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("verify report shape and overrides") {
  RunConfig cfg;
  cfg.seed = 7;
  apply_tolerance_override("heat=2e-6", cfg);
  const auto report = cmd_verify(Suite::heat, cfg);
  REQUIRE(report.checks.size() == 2);
  CHECK(report.checks[0].name == "heat");
  CHECK(report.checks[0].points_tested == 50);
  CHECK(report.checks[0].tolerance == 2e-6);
  CHECK(report.checks[0].max_residual < 1e-6);
  CHECK(report.pass);

  const auto doc = nlohmann::json::parse(report_to_json(report, false));
  CHECK(doc["schema"] == "1");
  CHECK(doc["checks"][0].contains("runtime_ms") == false);
  CHECK(nlohmann::json::parse(report_to_json(report, true))["checks"][0].contains("runtime_ms"));
}

TEST_CASE("verify is independent of parallelism") {
  RunConfig a;
  a.seed = 3;
  RunConfig b = a;
  b.parallelism = 4;
  CHECK(report_to_json(cmd_verify(Suite::distribution, a), false) ==
        report_to_json(cmd_verify(Suite::distribution, b), false));
}

TEST_CASE("eval targets") {
  RunConfig cfg;
  const auto j = nlohmann::json::parse(cmd_eval(EvalTarget::J, {{"z", "0.2"}, {"w", "0.3"}, {"tau", "0+1i"}}, cfg));
  CHECK(j["value"].contains("re"));
  const auto f = nlohmann::json::parse(
      cmd_eval(EvalTarget::F, {{"k", "3"}, {"N", "4"}, {"a", "0"}, {"b", "1"}, {"tau", "0+1.3i"}}, cfg));
  CHECK(std::abs(f["value"]["re"].get<double>() - -0.14082626087336886179) < 1e-13);
  const auto s = nlohmann::json::parse(
      cmd_eval(EvalTarget::s_coeffs, {{"z", "0.23"}, {"tau", "1.2i"}, {"D", "2"}, {"n", "3"}}, cfg));
  CHECK(s["coeffs"].size() == 4);
  const auto L = nlohmann::json::parse(
      cmd_eval(EvalTarget::L_form, {{"z", "0.23"}, {"tau", "1.2i"}, {"D", "2"}, {"n", "2"}}, cfg));
  CHECK(L["components"].contains("dz"));
  CHECK(L["components"].contains("dtau"));
  CHECK_THROWS_AS(cmd_eval(EvalTarget::J, {{"z", "0.2"}}, cfg), ConfigError);
  CHECK_THROWS_AS(cmd_eval(EvalTarget::J, {{"z", "0.2"}, {"w", "0.3"}, {"tau", "-1i"}}, cfg), ConfigError);
}
