#pragma once

// Verification suites, point evaluation and their JSON reports.  The
// ellpolylog executable is a thin CLI11 wrapper around these functions.
//
// Reports are deterministic: each check draws its points from its own
// mt19937_64 stream seeded by (seed, check name), per-point work may run on
// several threads but results are reduced in point order, and runtimes are
// only written when timing output is requested.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellpolylog/numerics.hpp"

namespace ellpolylog {

struct RunConfig {
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerance_overrides;
  LatticeTruncation truncation{};
  // Nested differences in the heat checks lose ~eps/h^2 to rounding, so the
  // suites default to a coarser step than DiffConfig does.
  DiffConfig diff{1e-3, 2};
  // Contour for s_coeffs; unset means default_s_contour.
  std::optional<CauchyConfig> cauchy;
  int parallelism = 1;
  bool timing = false;

  // Throws ConfigError.
  void validate() const;
};

// Reads a JSON object or "key = value" lines (# comments allowed) into cfg.
// Keys: seed, parallelism, timing, shell_radius, ordering, compensated_summation,
// diff_step, richardson_levels, cauchy_radius, cauchy_samples,
// cauchy_self_check, and tolerance.<check> (or a "tolerance" object in JSON).
void load_config_file(const std::string& path, RunConfig& cfg);

// "name=value" into cfg.tolerance_overrides.
void apply_tolerance_override(const std::string& spec, RunConfig& cfg);

// "0.2", "1.3i", "0+1.3i", "-0.3-0.2i", "(0.2,1.1)".  Throws ConfigError.
Complex parse_complex(const std::string& text);

enum class Suite { all, weierstrass, heat, curvature, closedness, distribution, katosiegel, eisenstein, specialization };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);
const std::vector<std::string>& suite_names();
// Every check name accepted by --tolerance, in report order.
const std::vector<std::string>& check_names();

struct CheckRow {
  std::string label;
  double residual = 0.0;
  bool pass = false;
};

struct CheckRecord {
  std::string name;
  std::string paper_anchor;
  int points_tested = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string error;           // set when the check threw
  std::vector<CheckRow> rows;  // per-case detail, only for some checks
};

struct VerificationReport {
  std::string schema = "1";
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  bool pass = false;
};

VerificationReport cmd_verify(Suite suite, const RunConfig& cfg);

// JSON with 17 significant digits for every float; runtime_ms only when
// with_timing is set.
std::string report_to_json(const VerificationReport& report, bool with_timing);

enum class EvalTarget { J, s_coeffs, F, F_tilde, dlogtheta, L_form };

EvalTarget parse_eval_target(const std::string& name);
const std::vector<std::string>& eval_target_names();

// Evaluates target with string parameters (z, w, tau, D, n, k, N, a, b,
// mode) and returns the JSON document.  Missing or malformed parameters
// throw ConfigError.
std::string cmd_eval(EvalTarget target, const std::map<std::string, std::string>& params, const RunConfig& cfg);

}  // namespace ellpolylog
