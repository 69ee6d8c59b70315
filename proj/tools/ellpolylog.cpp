// ellpolylog: verification suites and point evaluation.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad configuration.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ellpolylog/cli.hpp"
#include "ellpolylog/errors.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ellpolylog;

  CLI::App app{"Analytic elliptic polylogarithm: verification and evaluation"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> tolerances;
  std::string out_path;
  std::optional<int> shell_radius;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallelism;
  bool timing = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON or key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "RNG seed for sampled points");
    sub->add_option("--parallelism", parallelism, "worker threads");
    sub->add_option("--shell-radius", shell_radius, "lattice truncation radius");
    sub->add_option("--out", out_path, "write JSON here instead of stdout");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--tolerance", tolerances, "override as check=value (repeatable)");
  verify->add_flag("--timing", timing, "include runtime_ms per check");
  add_common(verify);

  auto* eval = app.add_subcommand("eval", "evaluate one quantity");
  std::string target;
  eval->add_option("target", target, "what to evaluate")->required()->check(CLI::IsMember(eval_target_names()));
  std::map<std::string, std::string> params;
  for (const char* key : {"z", "w", "tau", "D", "n", "k", "N", "a", "b", "mode"}) {
    eval->add_option_function<std::string>(
        std::string("--") + key, [&params, key](const std::string& v) { params[key] = v; }, key);
  }
  add_common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (seed) cfg.seed = *seed;
    if (parallelism) cfg.parallelism = *parallelism;
    if (shell_radius) cfg.truncation.shell_radius = *shell_radius;
    if (timing) cfg.timing = true;
    for (const auto& t : tolerances) apply_tolerance_override(t, cfg);
    cfg.validate();

    if (verify->parsed()) {
      const VerificationReport report = cmd_verify(parse_suite(suite), cfg);
      if (const int rc = write_output(report_to_json(report, cfg.timing), out_path)) return rc;
      for (const auto& c : report.checks) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  max_residual=" << c.max_residual
                  << "  tolerance=" << c.tolerance;
        if (!c.error.empty()) std::cerr << "  error: " << c.error;
        std::cerr << "\n";
      }
      return report.pass ? 0 : 1;
    }
    return write_output(cmd_eval(parse_eval_target(target), params, cfg), out_path);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
