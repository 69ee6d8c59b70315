#include "ellpolylog/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ellpolylog/eisenstein.hpp"
#include "ellpolylog/errors.hpp"
#include "ellpolylog/kronecker.hpp"
#include "ellpolylog/polylog.hpp"
#include "json.hpp"

namespace ellpolylog {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

void set_tolerance(const std::string& check, double value, RunConfig& cfg) {
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), check) == names.end()) {
    throw ConfigError("unknown check '" + check + "' in tolerance override");
  }
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("tolerance for " + check + " must be positive");
  cfg.tolerance_overrides[check] = value;
}

CauchyConfig& cauchy_of(RunConfig& cfg) {
  if (!cfg.cauchy) cfg.cauchy = CauchyConfig{};
  return *cfg.cauchy;
}

// All config values arrive here as text.
void set_key(const std::string& key, const std::string& value, RunConfig& cfg) {
  if (key == "seed") {
    const long long v = parse_integer(key, value);
    if (v < 0) throw ConfigError("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "parallelism") {
    cfg.parallelism = static_cast<int>(parse_integer(key, value));
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, value);
  } else if (key == "shell_radius") {
    cfg.truncation.shell_radius = static_cast<int>(parse_integer(key, value));
  } else if (key == "ordering") {
    if (value == "eisenstein") {
      cfg.truncation.ordering = LatticeOrdering::eisenstein;
    } else if (value == "box") {
      cfg.truncation.ordering = LatticeOrdering::box;
    } else {
      throw ConfigError("ordering must be eisenstein or box");
    }
  } else if (key == "compensated_summation") {
    cfg.truncation.compensated_summation = parse_bool(key, value);
  } else if (key == "diff_step") {
    cfg.diff.step = parse_double(key, value);
  } else if (key == "richardson_levels") {
    cfg.diff.richardson_levels = static_cast<int>(parse_integer(key, value));
  } else if (key == "cauchy_radius") {
    cauchy_of(cfg).radius = parse_double(key, value);
  } else if (key == "cauchy_samples") {
    cauchy_of(cfg).samples = static_cast<int>(parse_integer(key, value));
  } else if (key == "cauchy_self_check") {
    cauchy_of(cfg).self_check = parse_bool(key, value);
  } else if (key.rfind("tolerance.", 0) == 0) {
    set_tolerance(key.substr(10), parse_double(key, value), cfg);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string json_scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw ConfigError("config values must be scalars");
}

void write_json(const ordered_json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + ordered_json(key).dump() + ": ";
        write_json(item, indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_json(v[i], indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

std::string to_text(const ordered_json& doc) {
  std::string out;
  write_json(doc, 0, out);
  return out + "\n";
}

ordered_json complex_json(Complex v) { return ordered_json{{"re", v.real()}, {"im", v.imag()}}; }

const char* differential_name(Differential d) {
  switch (d) {
    case Differential::one: return "1";
    case Differential::dz: return "dz";
    case Differential::dtau: return "dtau";
    case Differential::dz_dtau: return "dz^dtau";
  }
  return "?";
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

  const std::string& text(const std::string& key) const {
    const auto it = p_.find(key);
    if (it == p_.end()) throw ConfigError("missing parameter --" + key);
    return it->second;
  }
  Complex complex(const std::string& key) const { return parse_complex(text(key)); }
  int integer(const std::string& key) const { return static_cast<int>(parse_integer(key, text(key))); }
  std::string text_or(const std::string& key, const std::string& fallback) const {
    return p_.count(key) ? text(key) : fallback;
  }

 private:
  const std::map<std::string, std::string>& p_;
};

ModuliPoint tau_param(const Params& p) {
  const Complex t = p.complex("tau");
  if (!(t.imag() > 0.0)) throw ConfigError("tau must lie in the upper half plane");
  return ModuliPoint(t);
}

EisensteinQuery query_param(const Params& p, const RunConfig& cfg) {
  EisensteinQuery q;
  q.a = p.integer("a");
  q.b = p.integer("b");
  q.N = p.integer("N");
  q.k = p.integer("k");
  q.tau = tau_param(p);
  q.trunc = cfg.truncation;
  const std::string mode = p.text_or("mode", "lipschitz");
  if (mode == "lipschitz") {
    q.mode = EisensteinMode::lipschitz;
  } else if (mode == "naive") {
    q.mode = EisensteinMode::naive;
  } else {
    throw ConfigError("mode must be lipschitz or naive");
  }
  return q;
}

}  // namespace

void RunConfig::validate() const {
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  try {
    truncation.validate();
    diff.validate();
    if (cauchy) cauchy->validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [name, tol] : tolerance_overrides) {
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw ConfigError("unknown check '" + name + "'");
    if (!(tol > 0.0)) throw ConfigError("tolerance for " + name + " must be positive");
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  if (trim(text).rfind('{', 0) == 0) {
    ordered_json doc;
    try {
      doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path + ": " + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "tolerance") {
        if (!value.is_object()) throw ConfigError("tolerance must be an object");
        for (const auto& [check, tol] : value.items()) {
          set_tolerance(check, parse_double("tolerance." + check, json_scalar_text(tol)), cfg);
        }
      } else {
        set_key(key, json_scalar_text(value), cfg);
      }
    }
    return;
  }

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), cfg);
  }
}

void apply_tolerance_override(const std::string& spec, RunConfig& cfg) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance override must look like name=value");
  const std::string name = trim(spec.substr(0, eq));
  set_tolerance(name, parse_double("tolerance." + name, trim(spec.substr(eq + 1))), cfg);
}

Complex parse_complex(const std::string& input) {
  std::string s;
  for (char c : input) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ConfigError("empty complex number");
  if (s.front() == '(' && s.back() == ')') {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("expected (re,im), got '" + input + "'");
    return {parse_double("complex", s.substr(1, comma - 1)), parse_double("complex", s.substr(comma + 1, s.size() - comma - 2))};
  }
  if (s.back() != 'i' && s.back() != 'j') return {parse_double("complex", s), 0.0};

  s.pop_back();
  // split at the last sign that is not the leading one or part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double("complex", t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_double("complex", s.substr(0, split)), imag_part(s.substr(split))};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"all",          "weierstrass", "heat",       "curvature",     "closedness",
                                                 "distribution", "katosiegel",  "eisenstein", "specialization"};
  return names;
}

Suite parse_suite(const std::string& name) {
  const auto& names = suite_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigError("unknown suite '" + name + "'");
  return static_cast<Suite>(it - names.begin());
}

std::string suite_name(Suite s) { return suite_names().at(static_cast<std::size_t>(s)); }

std::string report_to_json(const VerificationReport& report, bool with_timing) {
  ordered_json doc;
  doc["schema"] = report.schema;
  doc["suite"] = report.suite;
  doc["seed"] = report.seed;
  doc["pass"] = report.pass;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json j;
    j["name"] = c.name;
    j["paper_anchor"] = c.paper_anchor;
    j["points_tested"] = c.points_tested;
    j["max_residual"] = c.max_residual;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    if (with_timing) j["runtime_ms"] = c.runtime_ms;
    if (!c.error.empty()) j["error"] = c.error;
    if (!c.rows.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : c.rows) rows.push_back({{"label", r.label}, {"residual", r.residual}, {"pass", r.pass}});
      j["rows"] = std::move(rows);
    }
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  return to_text(doc);
}

const std::vector<std::string>& eval_target_names() {
  static const std::vector<std::string> names = {"J", "s_coeffs", "F", "F_tilde", "dlogtheta", "L_form"};
  return names;
}

EvalTarget parse_eval_target(const std::string& name) {
  const auto& names = eval_target_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigError("unknown eval target '" + name + "'");
  return static_cast<EvalTarget>(it - names.begin());
}

std::string cmd_eval(EvalTarget target, const std::map<std::string, std::string>& params, const RunConfig& cfg) {
  cfg.validate();
  const Params p(params);
  ordered_json doc;
  doc["target"] = eval_target_names().at(static_cast<std::size_t>(target));
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : params) inputs[k] = v;
  doc["inputs"] = std::move(inputs);

  switch (target) {
    case EvalTarget::J:
      doc["value"] = complex_json(jacobi_J({p.complex("z"), p.complex("w"), tau_param(p)}));
      break;
    case EvalTarget::s_coeffs: {
      const auto s = s_coeffs(p.complex("z"), tau_param(p), p.integer("D"), p.integer("n"), cfg.cauchy);
      ordered_json arr = ordered_json::array();
      for (const Complex& c : s.coeffs) arr.push_back(complex_json(c));
      doc["coeffs"] = std::move(arr);
      break;
    }
    case EvalTarget::F:
      doc["value"] = complex_json(F(query_param(p, cfg)));
      break;
    case EvalTarget::F_tilde:
      doc["value"] = complex_json(F_tilde(query_param(p, cfg), p.integer("D")));
      break;
    case EvalTarget::dlogtheta:
      doc["value"] = complex_json(dlog_kato_siegel(p.complex("z"), tau_param(p), p.integer("D")));
      break;
    case EvalTarget::L_form: {
      const LogValuedForm form = L_form(p.complex("z"), tau_param(p), p.integer("D"), p.integer("n"));
      ordered_json comps = ordered_json::object();
      for (Differential d : form.differentials()) {
        ordered_json terms = ordered_json::array();
        for (const auto& [idx, c] : form.component(d).terms()) {
          terms.push_back({{"i", idx.i}, {"j", idx.j}, {"re", c.real()}, {"im", c.imag()}});
        }
        comps[differential_name(d)] = std::move(terms);
      }
      doc["level"] = form.level();
      doc["components"] = std::move(comps);
      break;
    }
  }
  return to_text(doc);
}

}  // namespace ellpolylog
