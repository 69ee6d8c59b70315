#include <cmath>
#include <random>

#include "ellpolylog/errors.hpp"
#include "ellpolylog/logsheaf.hpp"
#include "support.hpp"

using namespace ellpolylog;

namespace {

LogFiber w(int n, int i, int j) { return LogFiber::unit(n, {i, j}); }

LogFiber random_fiber(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> small(-3, 3);
  LogFiber f(n);
  for (const auto& idx : LogFiber::basis(n)) {
    if (rng() % 3 == 0) f.add(idx, Complex(small(rng), small(rng)));
  }
  return f;
}

const ModuliPoint tau_a(Complex(0.2, 1.1));

}  // namespace

TEST_CASE("divided power product") {
  CHECK(dp_multiply(w(1, 1, 0), w(1, 1, 0)) == 2.0 * w(2, 2, 0));
  CHECK(dp_multiply(w(1, 1, 0), w(1, 0, 1)) == w(2, 1, 1));
  CHECK(dp_multiply(w(0, 0, 0), w(3, 2, 1)) == w(3, 2, 1));
  CHECK(dp_multiply(w(3, 2, 1), w(2, 1, 1)) == 6.0 * w(5, 3, 2));
}

TEST_CASE("divided power product is commutative and associative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const LogFiber a = random_fiber(rng, 2), b = random_fiber(rng, 2), c = random_fiber(rng, 2);
    CHECK(dp_multiply(a, b) == dp_multiply(b, a));
    CHECK(dp_multiply(dp_multiply(a, b), c) == dp_multiply(a, dp_multiply(b, c)));
  }
}

TEST_CASE("transition") {
  CHECK(transition(w(3, 3, 0)).is_zero());
  CHECK(transition(w(3, 0, 0)) == w(2, 0, 0));
  std::mt19937_64 rng(3);
  const LogFiber v = random_fiber(rng, 5);
  const LogFiber twice = transition(transition(v));
  CHECK(twice.level() == 3);
  for (const auto& idx : LogFiber::basis(3)) CHECK(twice.coeff(idx) == v.coeff(idx));
  CHECK_THROWS_AS(transition(w(0, 0, 0)), DomainError);
}

TEST_CASE("fiber bookkeeping") {
  LogFiber f(2);
  CHECK_THROWS_AS(f.add({2, 1}, 1.0), DomainError);
  f.add({1, 0}, 0.0);
  CHECK(f.terms().empty());
  CHECK(LogFiber::basis(2).size() == 6);
  CHECK_THROWS_AS(LogValuedForm(1, 3), DomainError);
  CHECK_THROWS_AS(LogValuedForm(1, 2).component(Differential::dz), DomainError);
}

TEST_CASE("connection eta is minus the classical quasi-period") {
  CHECK(std::abs(connection_eta(ModuliPoint(Complex(0, 1))) + pi) < 1e-12);
  const auto fd = connection_data(tau_a, EtaDerivative::finite_difference);
  const auto qs = connection_data(tau_a, EtaDerivative::q_series);
  CHECK(fd.eta == qs.eta);
  CHECK_CLOSE(fd.deta, qs.deta, 1e-8);
}

TEST_CASE("relative connection") {
  const Complex eta = connection_eta(tau_a);
  const auto v = rel_connection(w(2, 0, 0), tau_a);
  CHECK(v.component(Differential::dz) == -eta * w(2, 1, 0) + w(2, 0, 1));
  CHECK(v.component(Differential::dtau).is_zero());
  CHECK(rel_connection(w(2, 1, 1), tau_a).component(Differential::dz).is_zero());
  const auto base = rel_connection(w(3, 1, 1), tau_a);
  const auto doubled = rel_connection(2.0 * w(3, 1, 1), tau_a);
  CHECK(doubled.component(Differential::dz) == 2.0 * base.component(Differential::dz));
}

TEST_CASE("transition is horizontal") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& idx : LogFiber::basis(n)) {
      const LogFiber v = LogFiber::unit(n, idx);
      const LogFiber lhs = transition(rel_connection(v, tau_a).component(Differential::dz));
      const LogFiber rhs = rel_connection(transition(v), tau_a).component(Differential::dz);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("absolute connection") {
  const auto data = connection_data(tau_a);
  const Complex c = 1.0 / two_pi_i;
  for (int n = 0; n <= 5; ++n) {
    for (const auto& idx : LogFiber::basis(n)) {
      const LogFiber v = LogFiber::unit(n, idx);
      CHECK(abs_connection(v, data).component(Differential::dz) ==
            rel_connection(v, tau_a).component(Differential::dz));
    }
  }
  const auto a10 = abs_connection(w(1, 1, 0), data).component(Differential::dtau);
  CHECK(a10 == -data.eta * c * w(1, 1, 0) + c * w(1, 0, 1));
  CHECK(abs_connection(w(0, 0, 0), data).component(Differential::dtau).terms().empty());
}

TEST_CASE("Gauss-Manin matrix") {
  const auto m = gauss_manin_matrix(tau_a);
  const auto data = connection_data(tau_a);
  CHECK(m(0, 0) + m(1, 1) == Complex(0.0, 0.0));
  const auto a01 = abs_connection(w(1, 0, 1), data).component(Differential::dtau);
  const auto a10 = abs_connection(w(1, 1, 0), data).component(Differential::dtau);
  CHECK(m(0, 0) == a10.coeff({1, 0}));
  CHECK(m(1, 0) == a10.coeff({0, 1}));
  CHECK(m(0, 1) == a01.coeff({1, 0}));
  CHECK(m(1, 1) == a01.coeff({0, 1}));
}

TEST_CASE("Gauss-Manin matrix moves the periods") {
  // periods of (omega, eta) over (1, tau) are (1, tau) and (eta, eta tau + 2 pi i)
  // in the connection normalization; their tau-derivatives obey d/dtau P = M^T P
  DiffConfig cfg;
  cfg.step = 1e-5;
  auto periods = [](Complex t) {
    const Complex e = connection_eta(ModuliPoint(t));
    return std::vector<Complex>{1.0, t, e, e * t + two_pi_i};
  };
  const auto d = finite_diff(periods, tau_a.tau(), cfg);
  const auto p = periods(tau_a.tau());
  const auto m = gauss_manin_matrix(tau_a, EtaDerivative::q_series);
  for (int cyc = 0; cyc < 2; ++cyc) {
    const Complex pw = p[cyc], pe = p[2 + cyc];
    CHECK(std::abs(d[cyc] - (m(0, 0) * pw + m(1, 0) * pe)) < 1e-8);
    CHECK(std::abs(d[2 + cyc] - (m(0, 1) * pw + m(1, 1) * pe)) < 1e-7);
  }
}

TEST_CASE("curvature vanishes") {
  DiffConfig cfg;
  CHECK(curvature_residual(0, ModuliPoint(Complex(0, 1.3)), cfg) < 1e-12);
  CHECK(curvature_residual(1, ModuliPoint(Complex(0, 1.3)), cfg) < 1e-5);
  CHECK(curvature_residual(4, tau_a, cfg) < 1e-4);
  CHECK(curvature_residual(3, tau_a, cfg, EtaDerivative::q_series) < 1e-4);
  CHECK_THROWS_AS(curvature_residual(13, tau_a, cfg), DomainError);
}

TEST_CASE("Kodaira-Spencer lift") {
  const Complex c = 1.0 / two_pi_i;
  LogValuedForm in(3, 1);
  in.component(Differential::dz).add({0, 0}, 2.0);
  in.component(Differential::dz).add({1, 0}, 3.0);
  in.component(Differential::dz).add({3, 0}, 5.0);
  const auto out = ks_lift(in);
  CHECK(out.level() == 2);
  CHECK(out.component(Differential::dz) == 2.0 * w(2, 0, 0) + 3.0 * w(2, 1, 0));
  CHECK(out.component(Differential::dtau) == 3.0 * c * w(2, 0, 0) + 5.0 * c * w(2, 2, 0));

  LogValuedForm only_unit(2, 1);
  only_unit.component(Differential::dz).add({0, 0}, 1.0);
  CHECK(ks_lift(only_unit).component(Differential::dtau).is_zero());
  CHECK(ks_lift(LogValuedForm(2, 1)) == LogValuedForm(1, 1));

  LogValuedForm bad(2, 1);
  bad.component(Differential::dz).add({0, 1}, 1.0);
  CHECK_THROWS_AS(ks_lift(bad), DomainError);
}
