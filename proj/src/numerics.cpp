#include "ellpolylog/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "ellpolylog/errors.hpp"

namespace ellpolylog {

void ensure_finite(Complex v, std::string_view context) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NonFiniteError("non-finite value in " + std::string(context));
  }
}

void LatticeTruncation::validate() const {
  if (shell_radius < 1) throw DomainError("LatticeTruncation: shell_radius must be >= 1");
}

void DiffConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("DiffConfig: step must be > 0");
  if (richardson_levels < 0 || richardson_levels > 4) {
    throw DomainError("DiffConfig: richardson_levels must be in [0, 4]");
  }
}

void CauchyConfig::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("CauchyConfig: radius must be > 0");
  if (samples < 32 || (samples & (samples - 1)) != 0) {
    throw DomainError("CauchyConfig: samples must be a power of two >= 32");
  }
}

namespace {

// 0, 1, -1, 2, -2, ..., R, -R
int signed_index(int k) { return (k % 2 == 1) ? (k + 1) / 2 : -(k / 2); }

void append_shell(std::vector<LatticePoint>& out, int s) {
  for (int m = -s; m <= s; ++m) {
    if (std::abs(m) == s) {
      for (int n = -s; n <= s; ++n) out.push_back({m, n});
    } else {
      out.push_back({m, -s});
      out.push_back({m, s});
    }
  }
}

}  // namespace

std::vector<LatticePoint> enumerate_lattice(const LatticeTruncation& trunc) {
  trunc.validate();
  const int R = trunc.shell_radius;
  const auto side = static_cast<std::size_t>(2 * R + 1);
  std::vector<LatticePoint> out;
  out.reserve(side * side - 1);
  if (trunc.ordering == LatticeOrdering::eisenstein) {
    for (int i = 0; i < 2 * R + 1; ++i) {
      const int m = signed_index(i);
      for (int j = 0; j < 2 * R + 1; ++j) {
        const int n = signed_index(j);
        if (m == 0 && n == 0) continue;
        out.push_back({m, n});
      }
    }
  } else {
    for (int s = 1; s <= R; ++s) append_shell(out, s);
  }
  return out;
}

namespace {

template <typename Value, typename Eval>
Value richardson(const Eval& central, const DiffConfig& cfg) {
  const int levels = cfg.richardson_levels;
  std::vector<std::vector<Value>> table(static_cast<std::size_t>(levels) + 1);
  double h = cfg.step;
  for (int i = 0; i <= levels; ++i, h *= 0.5) {
    table[i].push_back(central(h));
    double factor = 4.0;
    for (int j = 1; j <= i; ++j, factor *= 4.0) {
      table[i].push_back(table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0));
    }
  }
  return table[levels][levels];
}

std::vector<Complex> operator+(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::vector<Complex> operator-(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<Complex> operator/(const std::vector<Complex>& a, double s) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / s;
  return out;
}

}  // namespace

Complex finite_diff(const ComplexFunction& f, Complex at, const DiffConfig& cfg) {
  cfg.validate();
  auto central = [&](double h) {
    const Complex plus = f(at + h);
    const Complex minus = f(at - h);
    ensure_finite(plus, "finite_diff stencil");
    ensure_finite(minus, "finite_diff stencil");
    return (plus - minus) / (2.0 * h);
  };
  return richardson<Complex>(central, cfg);
}

std::vector<Complex> finite_diff(const VectorFunction& f, Complex at, const DiffConfig& cfg) {
  cfg.validate();
  auto central = [&](double h) {
    const auto plus = f(at + h);
    const auto minus = f(at - h);
    if (plus.size() != minus.size()) throw DomainError("finite_diff: inconsistent vector length");
    for (std::size_t i = 0; i < plus.size(); ++i) {
      ensure_finite(plus[i], "finite_diff stencil");
      ensure_finite(minus[i], "finite_diff stencil");
    }
    return (plus - minus) / (2.0 * h);
  };
  return richardson<std::vector<Complex>>(central, cfg);
}

namespace {

// Scaled DFT a_k = (1/M) sum_j f(r w^j) w^(-jk), w = exp(2 pi i / M), for
// k in [0, kmax].  Also returns max |f| on the circle through `fmax`.
std::vector<Complex> scaled_spectrum(const ComplexFunction& f, double radius, int samples, int kmax,
                                     double& fmax) {
  std::vector<Complex> roots(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) roots[j] = std::polar(1.0, 2.0 * pi * j / samples);
  std::vector<Complex> values(static_cast<std::size_t>(samples));
  fmax = 0.0;
  for (int j = 0; j < samples; ++j) {
    values[j] = f(radius * roots[j]);
    ensure_finite(values[j], "cauchy_coeffs sample");
    fmax = std::max(fmax, std::abs(values[j]));
  }
  std::vector<Complex> spectrum(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) {
    ComplexAccumulator acc;
    for (int j = 0; j < samples; ++j) {
      const auto idx = static_cast<std::size_t>((static_cast<long long>(samples) - (static_cast<long long>(j) * k) % samples) % samples);
      acc.add(values[j] * roots[idx]);
    }
    spectrum[k] = acc.value() / static_cast<double>(samples);
  }
  return spectrum;
}

}  // namespace

std::vector<Complex> cauchy_coeffs(const ComplexFunction& f, int order, const CauchyConfig& cfg) {
  cfg.validate();
  if (order < 0) throw DomainError("cauchy_coeffs: order must be >= 0");
  if (order >= cfg.samples / 2) throw DomainError("cauchy_coeffs: order must be < samples/2");

  const int kmax = cfg.self_check ? cfg.samples - 1 : order;
  double fmax = 0.0;
  const auto spectrum = scaled_spectrum(f, cfg.radius, cfg.samples, kmax, fmax);

  std::vector<Complex> coeffs(static_cast<std::size_t>(order) + 1);
  double scale = 1.0;
  for (int k = 0; k <= order; ++k, scale *= cfg.radius) coeffs[k] = spectrum[k] / scale;

  if (cfg.self_check) {
    // A singularity inside the circle feeds negative Laurent powers into the
    // top of the spectrum (the residue lands at index samples-1).
    double high = 0.0;
    for (int k = cfg.samples / 2; k < cfg.samples; ++k) high = std::max(high, std::abs(spectrum[k]));
    if (high > 1e-7 * std::max(fmax, 1e-300)) {
      throw AliasingError("cauchy_coeffs: high-frequency content " + std::to_string(high) +
                          " relative to max|f| " + std::to_string(fmax));
    }
    double fmax2 = 0.0;
    const auto doubled = scaled_spectrum(f, cfg.radius, 2 * cfg.samples, order, fmax2);
    const double a = std::abs(coeffs[order]);
    const double b = std::abs(doubled[order] / scale * cfg.radius);
    const double floor = 1e-12 * std::max(fmax, fmax2) / (scale / cfg.radius);
    if (std::abs(a - b) > floor && (a > 10.0 * b || b > 10.0 * a)) {
      throw AliasingError("cauchy_coeffs: |c_order| changes by more than 10x when doubling samples");
    }
  }
  return coeffs;
}

Complex contour_integral(const ComplexFunction& f, Complex center, double radius, int samples) {
  if (!(radius > 0.0)) throw DomainError("contour_integral: radius must be > 0");
  if (samples < 1) throw DomainError("contour_integral: samples must be >= 1");
  ComplexAccumulator acc;
  for (int j = 0; j < samples; ++j) {
    const Complex dir = std::polar(1.0, 2.0 * pi * j / samples);
    const Complex value = f(center + radius * dir);
    ensure_finite(value, "contour_integral sample");
    acc.add(value * dir);
  }
  return acc.value() * Complex(0.0, 2.0 * pi * radius / samples);
}

std::vector<Complex> parallel_map(int count, int parallelism, const std::function<Complex(int)>& fn) {
  std::vector<Complex> out(static_cast<std::size_t>(std::max(count, 0)));
  const int workers = std::clamp(parallelism, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    threads.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        if (failed.load()) return;
        try {
          out[i] = fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Complex root_of_unity(long long k, int N) {
  const long long r = ((k % N) + N) % N;
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * pi * static_cast<double>(r) / N);
}

namespace {

Complex inverse_power(Complex x, int k) {
  Complex base = 1.0 / x;
  Complex result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

// sum_{q >= 0} (u + q*step)^(-k) by midpoint Euler-Maclaurin.  For k = 1 the
// divergent constant is dropped; callers only combine such tails so that
// the constants cancel.
Complex euler_maclaurin_tail(Complex u, double step, int k) {
  const Complex v = u - 0.5 * step;
  const Complex integral = (k == 1) ? -std::log(v) / step
                                    : inverse_power(v, k - 1) / (step * static_cast<double>(k - 1));
  const double kk = k;
  const Complex d1 = -kk * step * inverse_power(v, k + 1);
  const Complex d3 = -kk * (kk + 1) * (kk + 2) * step * step * step * inverse_power(v, k + 3);
  return integral + d1 / 24.0 - 7.0 * d3 / 5760.0;
}

struct TermContext {
  const ShiftedLatticeSum& sum;
  std::vector<Complex> chars;
  bool skip_origin;

  Complex character(long long m, long long n) const {
    const int N = sum.twist.N;
    const long long e = (m * sum.twist.b - n * sum.twist.a) % N;
    return chars[static_cast<std::size_t>((e + N) % N)];
  }

  Complex term(int m, int n) const {
    const Complex x = static_cast<double>(m) * sum.tau + static_cast<double>(n) + sum.shift;
    if (x == Complex(0.0, 0.0)) throw PoleProximityError("lattice_power_sum: term hits a pole");
    return character(m, n) * inverse_power(x, sum.weight);
  }
};

Complex eisenstein_row(const TermContext& ctx, int m, int R, bool compensated) {
  ComplexAccumulator acc(compensated);
  for (int j = 0; j < 2 * R + 1; ++j) {
    const int n = signed_index(j);
    if (ctx.skip_origin && m == 0 && n == 0) continue;
    acc.add(ctx.term(m, n));
  }
  // tails n > R and n < -R, split into residue classes of the character
  const int N = ctx.sum.twist.N;
  const int k = ctx.sum.weight;
  const Complex x = static_cast<double>(m) * ctx.sum.tau + ctx.sum.shift;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  Complex tail{0.0, 0.0};
  for (int r = 0; r < N; ++r) {
    const int n_plus = R + 1 + r;
    const double offset = static_cast<double>(n_plus);
    tail += ctx.character(m, n_plus) * euler_maclaurin_tail(x + offset, N, k);
    tail += sign * ctx.character(m, -n_plus) * euler_maclaurin_tail(-x + offset, N, k);
  }
  acc.add(tail);
  return acc.value();
}

Complex box_shell(const TermContext& ctx, int s, bool compensated) {
  ComplexAccumulator acc(compensated);
  if (s == 0) {
    acc.add(ctx.term(0, 0));
    return acc.value();
  }
  for (int m = -s; m <= s; ++m) {
    if (std::abs(m) == s) {
      for (int n = -s; n <= s; ++n) acc.add(ctx.term(m, n));
    } else {
      acc.add(ctx.term(m, -s));
      acc.add(ctx.term(m, s));
    }
  }
  return acc.value();
}

}  // namespace

Complex lattice_power_sum(const ShiftedLatticeSum& sum, const LatticeTruncation& trunc, int parallelism) {
  trunc.validate();
  if (sum.weight < 1) throw DomainError("lattice_power_sum: weight must be >= 1");
  if (sum.twist.N < 1) throw DomainError("lattice_power_sum: twist modulus must be >= 1");
  if (!(sum.tau.imag() > 0.0)) throw DomainError("lattice_power_sum: Im(tau) must be > 0");
  if (trunc.ordering == LatticeOrdering::box && sum.weight <= 2) {
    throw ConvergenceError("lattice_power_sum: weight <= 2 needs eisenstein ordering");
  }

  TermContext ctx{sum, {}, sum.shift == Complex(0.0, 0.0)};
  ctx.chars.reserve(static_cast<std::size_t>(sum.twist.N));
  for (int j = 0; j < sum.twist.N; ++j) ctx.chars.push_back(root_of_unity(j, sum.twist.N));

  const int R = trunc.shell_radius;
  const bool comp = trunc.compensated_summation;
  std::vector<Complex> partials;
  if (trunc.ordering == LatticeOrdering::eisenstein) {
    partials = parallel_map(2 * R + 1, parallelism,
                            [&](int i) { return eisenstein_row(ctx, signed_index(i), R, comp); });
  } else {
    // shell 0 is the origin, only present for shifted sums
    const int first = ctx.skip_origin ? 1 : 0;
    partials = parallel_map(R + 1 - first, parallelism,
                            [&](int i) { return box_shell(ctx, i + first, comp); });
  }
  ComplexAccumulator total(comp);
  for (const Complex& p : partials) total.add(p);
  const Complex value = total.value();
  ensure_finite(value, "lattice_power_sum");
  return value;
}

}  // namespace ellpolylog
