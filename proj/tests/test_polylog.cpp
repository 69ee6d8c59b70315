#include <cmath>

#include "ellpolylog/errors.hpp"
#include "ellpolylog/kronecker.hpp"
#include "ellpolylog/polylog.hpp"
#include "support.hpp"

using namespace ellpolylog;

namespace {

const ModuliPoint tau_a(Complex(0.2, 1.1));
const Complex z_a(0.3, 0.1);

EisensteinQuery query(int a, int b, int N, int k, const ModuliPoint& tau) {
  EisensteinQuery q;
  q.a = a;
  q.b = b;
  q.N = N;
  q.k = k;
  q.tau = tau;
  return q;
}

}  // namespace

TEST_CASE("l_form") {
  const auto l = l_form(z_a, tau_a, 2, 3);
  const auto s = s_coeffs(z_a, tau_a, 2, 3);
  const double fact[] = {1, 1, 2, 6};
  for (int k = 0; k <= 3; ++k) CHECK(l.component(Differential::dz).coeff({k, 0}) == fact[k] * s.coeffs[k]);
  CHECK(l.component(Differential::dz).terms().size() == 4);
  CHECK(l.component(Differential::dtau).is_zero());

  CHECK_CLOSE(l_form(z_a, tau_a, 3, 0).component(Differential::dz).coeff({0, 0}), dlog_kato_siegel(z_a, tau_a, 3),
              1e-14);
  const Complex zeta_combo = 4.0 * zeta_fn(z_a, tau_a) - 2.0 * zeta_fn(2.0 * z_a, tau_a);
  CHECK_CLOSE(l.component(Differential::dz).coeff({0, 0}), zeta_combo, 1e-8);
  CHECK(transition(l) == l_form(z_a, tau_a, 2, 2));
  CHECK(l_form(z_a, tau_a, 1, 3).max_abs() == 0.0);
}

TEST_CASE("L_form") {
  for (int n = 0; n <= 4; ++n) {
    const auto L = L_form(z_a, tau_a, 2, n);
    const auto s = s_coeffs(z_a, tau_a, 2, n + 1);
    CHECK(L.component(Differential::dz) == l_form(z_a, tau_a, 2, n).component(Differential::dz));
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
      const Complex want = fact * (k + 1) * s.coeffs[static_cast<std::size_t>(k + 1)] / two_pi_i;
      CHECK(std::abs(L.component(Differential::dtau).coeff({k, 0}) - want) <= 1e-12 * std::abs(want));
      fact *= k + 1;
    }
  }
  for (int n = 1; n <= 6; ++n) {
    auto L = L_form(z_a, tau_a, 3, n);
    for (int m = 1; m <= n; ++m) {
      L = transition(L);
      CHECK(L == L_form(z_a, tau_a, 3, n - m));
    }
  }
  CHECK_THROWS_AS(L_form(z_a, tau_a, 2, 13), DomainError);
  CHECK_THROWS_AS(L_form(Complex(0.5, 1e-7), tau_a, 2, 1), PoleProximityError);
}

TEST_CASE("closedness") {
  DiffConfig cfg;
  CHECK(closedness_residual(Complex(0.23, 0.0), ModuliPoint(Complex(0, 1.2)), 2, 2, cfg) < 1e-5);
  CHECK(closedness_residual(z_a, tau_a, 3, 0, cfg) < 1e-6);
  for (int n = 1; n <= 4; ++n) CHECK(closedness_residual(z_a, tau_a, 2, n, cfg) < 1e-4);
}

TEST_CASE("closedness detects a perturbation") {
  DiffConfig cfg;
  const int n = 2;
  const double bump = 1e-3 * L_form(z_a, tau_a, 2, n).max_abs();
  auto perturbed = [&](Complex z, const ModuliPoint& t) {
    LogValuedForm L = L_form(z, t, 2, n);
    L.component(Differential::dtau).add({0, 0}, bump);
    return L;
  };
  CHECK(closedness_residual(perturbed, z_a, tau_a, cfg) > 1e-4);
}

TEST_CASE("specialization equals F_tilde") {
  for (int k = 2; k <= 4; ++k) {
    for (int N : {3, 4, 5}) {
      for (int D : {2, 3}) {
        const TorsionLabel label{1, 2, N, D};
        const Complex want = F_tilde(query(label.a, label.b, N, k + 1, tau_a), D, DegenerateLabel::extend);
        const Complex got = specialize_eisenstein(label, tau_a, k);
        CHECK(std::abs(got - want) / std::abs(want) < 1e-6);
      }
    }
  }
  const ModuliPoint tau_i(Complex(0, 1.3));
  const Complex ref = specialize_eisenstein({1, 0, 4, 2}, tau_i, 2);
  CHECK(std::abs(ref - F_tilde(query(1, 0, 4, 3, tau_i), 2)) / std::abs(ref) < 1e-6);
}

TEST_CASE("specialization laws") {
  for (int k = 1; k <= 4; ++k) {
    const Complex v = specialize_eisenstein({1, 2, 5, 3}, tau_a, k);
    const Complex vm = specialize_eisenstein({-1, -2, 5, 3}, tau_a, k);
    CHECK(std::abs(vm - ((k % 2 == 1) ? 1.0 : -1.0) * v) < 1e-9 * std::abs(v));
  }
  CHECK(specialize_eisenstein({1, 0, 4, 1}, tau_a, 3) == Complex(0.0, 0.0));

  LatticeTruncation t;
  t.shell_radius = 300;
  const Complex naive = specialize_eisenstein({1, 2, 5, 2}, tau_a, 2, t, EisensteinMode::naive);
  CHECK(std::abs(naive - specialize_eisenstein({1, 2, 5, 2}, tau_a, 2)) < 1e-8);
  t.ordering = LatticeOrdering::box;
  CHECK_THROWS_AS(specialize_eisenstein({1, 2, 5, 2}, tau_a, 1, t, EisensteinMode::naive), ConvergenceError);
  CHECK_THROWS_AS(specialize_eisenstein({0, 0, 5, 2}, tau_a, 2), DomainError);
}
