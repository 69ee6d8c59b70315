#include <cmath>

#include "ellpolylog/eisenstein.hpp"
#include "ellpolylog/errors.hpp"
#include "support.hpp"

using namespace ellpolylog;

namespace {

EisensteinQuery query(int a, int b, int N, int k, Complex tau, EisensteinMode mode = EisensteinMode::lipschitz) {
  EisensteinQuery q;
  q.a = a;
  q.b = b;
  q.N = N;
  q.k = k;
  q.tau = ModuliPoint(tau);
  q.mode = mode;
  return q;
}

struct Reference {
  int a, b, N, k;
  Complex tau, value;
};

// 40-digit values with inner sums from numerically differentiated cotangents
const Reference references[] = {
    {0, 1, 4, 3, {0.0, 1.3}, {-0.14082626087336886179, 0.0}},
    {1, 0, 4, 3, {0.0, 1.3}, {0.0, -1.8557931656456088795}},
    {1, 2, 5, 4, {0.2, 1.1}, {-0.39175073932358827896, 2.9405051529577479267}},
    {2, 1, 3, 2, {-0.3, 0.9}, {-0.13613181062173191922, -0.13673177257785773685}},
    {1, 1, 3, 1, {0.1, 1.0}, {0.58219668031635628266, -0.53753804730700432514}},
    {3, 2, 5, 5, {0.4, 0.85}, {-22.507057744120387212, 57.353232468823335332}},
};

}  // namespace

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli_polynomial(0, 0.3) == 1.0);
  CHECK(std::abs(bernoulli_polynomial(1, 0.25) + 0.25) < 1e-15);
  CHECK(std::abs(bernoulli_polynomial(2, 0.0) - 1.0 / 6.0) < 1e-15);
  CHECK(std::abs(bernoulli_polynomial(4, 0.5) - 7.0 / 240.0) < 1e-15);
}

TEST_CASE("twisted row sums agree across branches") {
  // near Im x = 0.5 the exponential and cotangent branches meet
  for (int s : {1, 2, 3, 5}) {
    for (int j : {0, 1, 3}) {
      if (s == 1 && j == 0) continue;
      const Complex lo = twisted_row_sum(Complex(0.3, 0.4999999), j, 4, s);
      const Complex hi = twisted_row_sum(Complex(0.3, 0.5), j, 4, s);
      CHECK(std::abs(lo - hi) < 1e-5 * std::max(1.0, std::abs(hi)));
    }
  }
  // untwisted s = 2 is pi^2 / sin^2
  const Complex x(0.37, 0.2);
  const Complex want = pi * pi / (std::sin(pi * x) * std::sin(pi * x));
  CHECK_CLOSE(twisted_row_sum(x, 0, 3, 2), want, 1e-13);
  CHECK_CLOSE(twisted_row_sum(x + Complex(0, 1.0), 0, 3, 2),
              pi * pi / std::pow(std::sin(pi * (x + Complex(0, 1.0))), 2), 1e-13);
  CHECK_CLOSE(twisted_row_sum(x, 0, 1, 1), pi / std::tan(pi * x), 1e-13);
  CHECK_CLOSE(twisted_row_sum(x + Complex(0, 2.0), 0, 1, 1), pi / std::tan(pi * (x + Complex(0, 2.0))), 1e-13);
  CHECK_THROWS_AS(twisted_row_sum(Complex(2.0, 0.0), 1, 3, 2), PoleProximityError);
}

TEST_CASE("F reference values") {
  for (const auto& r : references) {
    CHECK_CLOSE(F(query(r.a, r.b, r.N, r.k, r.tau)), r.value, 1e-12);
  }
}

TEST_CASE("naive and lipschitz agree") {
  auto naive = query(0, 1, 4, 3, {0.0, 1.3}, EisensteinMode::naive);
  naive.trunc.shell_radius = 2000;
  const Complex ref = F(query(0, 1, 4, 3, {0.0, 1.3}));
  CHECK(testing_support::rel_err(F(naive), ref) < 1e-5);

  auto box = naive;
  box.trunc.ordering = LatticeOrdering::box;
  box.trunc.shell_radius = 400;
  CHECK(std::abs(F(box) - ref) / std::abs(ref) < 1e-2);
  box.k = 2;
  CHECK_THROWS_AS(F(box), ConvergenceError);
}

TEST_CASE("parity and translation laws") {
  for (int k = 1; k <= 8; ++k) {
    const Complex tau(0.17, 1.05);
    const Complex v = F(query(1, 2, 5, k, tau));
    const Complex vm = F(query(-1, -2, 5, k, tau));
    CHECK(std::abs(vm - ((k % 2 == 0) ? 1.0 : -1.0) * v) < 1e-9 * std::max(1.0, std::abs(v)));
  }
  for (int k = 3; k <= 5; ++k) {
    const Complex tau(-0.21, 0.93);
    CHECK_CLOSE(F(query(1, 2, 5, k, tau + 1.0)), F(query(1, 3, 5, k, tau)), 1e-8);
  }
}

TEST_CASE("weight 2 under Eisenstein summation") {
  const ModuliPoint tau(Complex(-0.3, 0.9));
  LatticeTruncation t;
  t.shell_radius = 500;
  const Complex v500 = eisenstein_sum_k2(2, 1, 3, tau, t);
  t.shell_radius = 1000;
  const Complex v1000 = eisenstein_sum_k2(2, 1, 3, tau, t);
  CHECK(std::abs(v500 - v1000) < 5e-4);
  CHECK(std::abs(v1000 - F(query(2, 1, 3, 2, {-0.3, 0.9}))) < 1e-4);
  CHECK(std::abs(eisenstein_sum_k2(-2, -1, 3, tau, t) - v1000) < 1e-8);
  t.ordering = LatticeOrdering::box;
  CHECK_THROWS_AS(eisenstein_sum_k2(2, 1, 3, tau, t), ConvergenceError);
}

TEST_CASE("F_tilde") {
  const auto q = query(1, 0, 4, 3, {0.0, 1.0});
  CHECK(F_tilde(q, 1) == Complex(0.0, 0.0));
  const Complex direct = 9.0 * F(q) - std::pow(3.0, -1.0) * F(query(3, 0, 4, 3, {0.0, 1.0}));
  CHECK(std::abs(F_tilde(q, 3) - direct) < 1e-9);
  CHECK_CLOSE(F_tilde(q, 3), Complex(0.0, -8.7115967663244532389), 1e-12);
  CHECK_THROWS_AS(F_tilde(query(2, 0, 4, 3, {0.0, 1.0}), 2), DomainError);

  // extended to (0,0) by the untwisted sum: F_(0,0) = 2 G_3 = 0 and -G_4 = -g2/60 at weight 4
  const auto q3 = query(1, 1, 3, 3, {0.2, 1.1});
  CHECK_CLOSE(F_tilde(q3, 3, DegenerateLabel::extend), 9.0 * F(q3), 1e-13);
  const auto q4 = query(1, 1, 3, 4, {0.2, 1.1});
  const Complex g4 = g_invariants(ModuliPoint(Complex(0.2, 1.1))).g2 / 60.0;
  CHECK_CLOSE(F_tilde(q4, 3, DegenerateLabel::extend), 9.0 * F(q4) + 6.0 / 9.0 * g4, 1e-12);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(F(query(0, 0, 4, 3, {0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(F(query(4, 8, 4, 3, {0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(F(query(1, 0, 1, 3, {0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(F(query(1, 0, 4, 0, {0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(F(query(0, 1, 4, 1, {0.0, 1.0})), ConvergenceError);
}
