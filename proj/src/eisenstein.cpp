#include "ellpolylog/eisenstein.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ellpolylog/errors.hpp"

namespace ellpolylog {

namespace {

constexpr int max_terms = 100000;

int mod(long long x, int N) { return static_cast<int>(((x % N) + N) % N); }

double factorial(int n) {
  double f = 1.0;
  for (int t = 2; t <= n; ++t) f *= t;
  return f;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int t = 1; t <= k; ++t) r = r * static_cast<double>(n - k + t) / static_cast<double>(t);
  return std::round(r);
}

// Coefficients of P_j with d^j/dv^j (pi cot pi v) = pi^(j+1) P_j(cot pi v);
// P_0 = y, P_(j+1) = -(1 + y^2) P_j'.
std::vector<double> cot_derivative_poly(int j) {
  std::vector<double> p{0.0, 1.0};
  for (int step = 0; step < j; ++step) {
    std::vector<double> d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t e = 1; e < p.size(); ++e) d[e - 1] = static_cast<double>(e) * p[e];
    std::vector<double> next(d.size() + 2, 0.0);
    for (std::size_t e = 0; e < d.size(); ++e) {
      next[e] -= d[e];
      next[e + 2] -= d[e];
    }
    p = std::move(next);
  }
  return p;
}

// sum_q (v + q)^(-s), symmetric for s = 1
Complex hurwitz_row(Complex v, int s, const std::vector<double>& poly) {
  const Complex y = std::cos(pi * v) / std::sin(pi * v);
  Complex acc{0.0, 0.0};
  for (std::size_t e = poly.size(); e-- > 0;) acc = acc * y + poly[e];
  const double sign = (s % 2 == 1) ? 1.0 : -1.0;
  return sign * std::pow(pi, s) * acc / factorial(s - 1);
}

// Im x > 0 only
Complex lipschitz_row(Complex x, int j, int N, int s) {
  const double alpha = static_cast<double>(mod(j, N)) / N;
  const Complex e = std::exp(two_pi_i * x);
  Complex phase = std::exp(two_pi_i * (1.0 - alpha) * x);
  ComplexAccumulator acc;
  const double peak = (s - 1) / (2.0 * pi * x.imag());
  for (int r = 1; r <= max_terms; ++r) {
    const double nu = r - alpha;
    const Complex term = std::pow(nu, s - 1) * phase;
    acc.add(term);
    if (nu > peak && std::abs(term) <= 1e-18 * std::abs(acc.value())) {
      Complex value = std::pow(-two_pi_i, s) / factorial(s - 1) * acc.value();
      if (s == 1 && alpha == 0.0) value += Complex(0.0, -pi);
      return value;
    }
    phase *= e;
  }
  throw ConvergenceError("twisted_row_sum: exponential series did not converge");
}

}  // namespace

double bernoulli_polynomial(int k, double x) {
  if (k < 0) throw DomainError("bernoulli_polynomial: k must be >= 0");
  // Bernoulli numbers with B_1 = -1/2
  std::vector<double> B(static_cast<std::size_t>(k) + 1, 0.0);
  B[0] = 1.0;
  for (int m = 1; m <= k; ++m) {
    double s = 0.0;
    for (int t = 0; t < m; ++t) s += binomial(m + 1, t) * B[static_cast<std::size_t>(t)];
    B[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  double v = 0.0;
  for (int t = 0; t <= k; ++t) v += binomial(k, t) * B[static_cast<std::size_t>(t)] * std::pow(x, k - t);
  return v;
}

Complex twisted_row_sum(Complex x, int j, int N, int s) {
  if (s < 1) throw DomainError("twisted_row_sum: s must be >= 1");
  if (N < 1) throw DomainError("twisted_row_sum: N must be >= 1");
  if (std::abs(x - std::round(x.real())) < 1e-12) {
    throw PoleProximityError("twisted_row_sum: x is an integer");
  }
  if (x.imag() >= 0.5) return lipschitz_row(x, j, N, s);
  if (x.imag() <= -0.5) return ((s % 2 == 0) ? 1.0 : -1.0) * lipschitz_row(-x, -j, N, s);

  // near the real axis: split n by residue mod N
  const auto poly = cot_derivative_poly(s - 1);
  ComplexAccumulator acc;
  const double scale = std::pow(static_cast<double>(N), -s);
  for (int r = 0; r < N; ++r) {
    acc.add(root_of_unity(static_cast<long long>(j) * r, N) * scale *
            hurwitz_row((x + static_cast<double>(r)) / static_cast<double>(N), s, poly));
  }
  return acc.value();
}

void EisensteinQuery::validate() const {
  if (N < 2) throw DomainError("EisensteinQuery: N must be >= 2");
  if (k < 1) throw DomainError("EisensteinQuery: k must be >= 1");
  if (mod(a, N) == 0 && mod(b, N) == 0) throw DomainError("EisensteinQuery: (a,b) must be nonzero mod N");
  trunc.validate();
}

namespace {

double prefactor(int k) { return ((k % 2 == 1) ? 1.0 : -1.0) * factorial(k - 1); }

// sum' zeta_N^(m b - n a) (m tau + n)^(-k), inner sums in closed form
Complex lipschitz_sum(int a, int b, int N, int k, const ModuliPoint& tau) {
  const int j = mod(-static_cast<long long>(a), N);
  if (k == 1 && j == 0) {
    throw ConvergenceError("F: weight 1 with a = 0 mod N has no convergent Eisenstein summation");
  }
  ComplexAccumulator acc;
  // m = 0: sum_{n != 0} e^(2 pi i n alpha) n^(-k) = -(2 pi i)^k B_k(alpha) / k!
  acc.add(-std::pow(two_pi_i, k) * bernoulli_polynomial(k, static_cast<double>(j) / N) / factorial(k));
  const Complex t = tau.tau();
  int small = 0;
  for (int m = 1; m <= max_terms; ++m) {
    const double md = m;
    const Complex up = twisted_row_sum(md * t, j, N, k);
    const Complex down = twisted_row_sum(-md * t, j, N, k);
    acc.add(root_of_unity(static_cast<long long>(m) * b, N) * up +
            root_of_unity(-static_cast<long long>(m) * b, N) * down);
    // twisted rows can cancel exactly, so judge convergence on the untwisted ones
    const double size = std::max(std::abs(up), std::abs(down));
    small = (size <= 1e-17 * std::max(std::abs(acc.value()), 1e-300)) ? small + 1 : 0;
    if (small >= 3) return acc.value();
  }
  throw ConvergenceError("F: outer m-series did not converge");
}

}  // namespace

namespace {

Complex evaluate(const EisensteinQuery& q) {
  Complex s;
  if (q.mode == EisensteinMode::lipschitz) {
    s = lipschitz_sum(q.a, q.b, q.N, q.k, q.tau);
  } else {
    ShiftedLatticeSum sum;
    sum.tau = q.tau.tau();
    sum.weight = q.k;
    sum.twist = {mod(q.a, q.N), mod(q.b, q.N), q.N};
    s = lattice_power_sum(sum, q.trunc);
  }
  const Complex value = prefactor(q.k) * s;
  ensure_finite(value, "F");
  return value;
}

}  // namespace

Complex F(const EisensteinQuery& q) {
  q.validate();
  return evaluate(q);
}

Complex F_tilde(const EisensteinQuery& q, int D, DegenerateLabel degenerate) {
  if (D < 1) throw DomainError("F_tilde: D must be >= 1");
  q.validate();
  if (D == 1) return Complex{0.0, 0.0};
  EisensteinQuery scaled = q;
  scaled.a = mod(static_cast<long long>(D) * q.a, q.N);
  scaled.b = mod(static_cast<long long>(D) * q.b, q.N);
  if (scaled.a == 0 && scaled.b == 0) {
    if (degenerate == DegenerateLabel::reject) throw DomainError("F_tilde: (D a, D b) = (0,0) mod N");
    if (q.k < 2) throw ConvergenceError("F_tilde: F_(0,0) needs weight >= 2");
  }
  const double Dd = D;
  return Dd * Dd * evaluate(q) - std::pow(Dd, 2 - q.k) * evaluate(scaled);
}

Complex eisenstein_sum_k2(int a, int b, int N, const ModuliPoint& tau, const LatticeTruncation& trunc) {
  if (trunc.ordering != LatticeOrdering::eisenstein) {
    throw ConvergenceError("eisenstein_sum_k2: needs eisenstein ordering");
  }
  EisensteinQuery q;
  q.a = a;
  q.b = b;
  q.N = N;
  q.k = 2;
  q.tau = tau;
  q.trunc = trunc;
  q.mode = EisensteinMode::naive;
  return F(q);
}

}  // namespace ellpolylog
