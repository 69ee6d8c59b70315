#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ellpolylog/cli.hpp"
#include "ellpolylog/eisenstein.hpp"
#include "ellpolylog/errors.hpp"
#include "ellpolylog/kronecker.hpp"
#include "ellpolylog/polylog.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace py = pybind11;
using namespace ellpolylog;

namespace {

EisensteinMode mode_of(const std::string& name) {
  if (name == "lipschitz") return EisensteinMode::lipschitz;
  if (name == "naive") return EisensteinMode::naive;
  throw ConfigError("mode must be lipschitz or naive");
}

EisensteinQuery query(int k, int N, int a, int b, Complex tau, const std::string& mode, int shell_radius) {
  EisensteinQuery q;
  q.a = a;
  q.b = b;
  q.N = N;
  q.k = k;
  q.tau = ModuliPoint(tau);
  q.mode = mode_of(mode);
  q.trunc.shell_radius = shell_radius;
  return q;
}

// {(i, j, differential): coefficient}
py::dict form_dict(const LogValuedForm& form) {
  static const char* names[] = {"1", "dz", "dtau", "dz^dtau"};
  py::dict out;
  for (Differential d : form.differentials()) {
    for (const auto& [idx, c] : form.component(d).terms()) {
      out[py::make_tuple(idx.i, idx.j, names[static_cast<int>(d)])] = c;
    }
  }
  return out;
}

RunConfig run_config(std::uint64_t seed, int parallelism, const std::map<std::string, double>& tolerances) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.parallelism = parallelism;
  for (const auto& [name, tol] : tolerances) apply_tolerance_override(name + "=" + std::to_string(tol), cfg);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Analytic elliptic polylogarithm: Kronecker theta kernel, Eisenstein series, verification suites";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PoleProximityError>(m, "PoleProximityError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<AliasingError>(m, "AliasingError", base.ptr());
  py::register_exception<NonFiniteError>(m, "NonFiniteError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("theta", [](Complex z, Complex tau) { return theta(z, ModuliPoint(tau)); }, py::arg("z"), py::arg("tau"));
  m.def("jacobi_J", [](Complex z, Complex w, Complex tau) { return jacobi_J({z, w, ModuliPoint(tau)}); },
        py::arg("z"), py::arg("w"), py::arg("tau"));
  m.def("zeta", [](Complex z, Complex tau) { return zeta_fn(z, ModuliPoint(tau)); }, py::arg("z"), py::arg("tau"));
  m.def(
      "wp",
      [](Complex z, Complex tau) {
        const auto v = wp(z, ModuliPoint(tau));
        return py::make_tuple(v.wp, v.wp_prime);
      },
      py::arg("z"), py::arg("tau"), "(wp, wp') at z");
  m.def(
      "eta_periods",
      [](Complex tau) {
        const auto q = eta_periods(ModuliPoint(tau));
        return py::make_tuple(q.eta1, q.eta2);
      },
      py::arg("tau"));
  m.def("s_coeffs", [](Complex z, Complex tau, int D, int n) { return s_coeffs(z, ModuliPoint(tau), D, n).coeffs; },
        py::arg("z"), py::arg("tau"), py::arg("D"), py::arg("n"));
  m.def("dlog_kato_siegel", [](Complex z, Complex tau, int D) { return dlog_kato_siegel(z, ModuliPoint(tau), D); },
        py::arg("z"), py::arg("tau"), py::arg("D"));
  m.def("distribution_residual",
        [](Complex z, Complex w, Complex tau, int D) { return distribution_residual({z, w, ModuliPoint(tau)}, D); },
        py::arg("z"), py::arg("w"), py::arg("tau"), py::arg("D"));
  m.def(
      "F",
      [](int k, int N, int a, int b, Complex tau, const std::string& mode, int shell_radius) {
        return F(query(k, N, a, b, tau, mode, shell_radius));
      },
      py::arg("k"), py::arg("N"), py::arg("a"), py::arg("b"), py::arg("tau"), py::arg("mode") = "lipschitz",
      py::arg("shell_radius") = 2000);
  m.def(
      "F_tilde",
      [](int k, int N, int a, int b, Complex tau, int D, const std::string& mode) {
        return F_tilde(query(k, N, a, b, tau, mode, 2000), D);
      },
      py::arg("k"), py::arg("N"), py::arg("a"), py::arg("b"), py::arg("tau"), py::arg("D"),
      py::arg("mode") = "lipschitz");
  m.def(
      "specialize_eisenstein",
      [](int a, int b, int N, int D, Complex tau, int k) {
        return specialize_eisenstein({a, b, N, D}, ModuliPoint(tau), k);
      },
      py::arg("a"), py::arg("b"), py::arg("N"), py::arg("D"), py::arg("tau"), py::arg("k"));
  m.def("l_form", [](Complex z, Complex tau, int D, int n) { return form_dict(l_form(z, ModuliPoint(tau), D, n)); },
        py::arg("z"), py::arg("tau"), py::arg("D"), py::arg("n"));
  m.def("L_form", [](Complex z, Complex tau, int D, int n) { return form_dict(L_form(z, ModuliPoint(tau), D, n)); },
        py::arg("z"), py::arg("tau"), py::arg("D"), py::arg("n"));
  m.def(
      "verify_json",
      [](const std::string& suite, std::uint64_t seed, int parallelism, const std::map<std::string, double>& tol) {
        const RunConfig cfg = run_config(seed, parallelism, tol);
        VerificationReport report;
        {
          py::gil_scoped_release release;
          report = cmd_verify(parse_suite(suite), cfg);
        }
        return report_to_json(report, false);
      },
      py::arg("suite") = "all", py::arg("seed") = 1, py::arg("parallelism") = 1,
      py::arg("tolerances") = std::map<std::string, double>{});
  m.def("suite_names", &suite_names);
  m.def("check_names", &check_names);
}
