#include "ellpolylog/weierstrass.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ellpolylog/errors.hpp"

namespace ellpolylog {

namespace {

constexpr int max_series_terms = 20000;

// sum_{n >= 1} n^p q^n / (1 - q^n)
Complex lambert_series(const ModuliPoint& tau, int power) {
  const Complex q = tau.q();
  const double aq = std::abs(q);
  ComplexAccumulator acc;
  Complex qn = q;
  for (int n = 1; n <= max_series_terms; ++n) {
    const Complex term = std::pow(static_cast<double>(n), power) * qn / (1.0 - qn);
    acc.add(term);
    // remaining terms are bounded by a geometric tail of this one
    if (std::abs(term) * (1.0 + 1.0 / (1.0 - aq)) < 1e-18 * std::max(1.0, std::abs(acc.value()))) {
      return acc.value();
    }
    qn *= q;
  }
  throw ConvergenceError("q-series did not converge: Im(tau) = " + std::to_string(tau.tau().imag()) +
                         " is too small");
}

}  // namespace

ModuliPoint::ModuliPoint(Complex tau) : tau_(tau) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || !(tau.imag() > 0.0)) {
    throw DomainError("ModuliPoint: tau must lie in the upper half plane");
  }
}

Complex ModuliPoint::q() const { return std::exp(two_pi_i * tau_); }

Complex eisenstein_e2(const ModuliPoint& tau) { return 1.0 - 24.0 * lambert_series(tau, 1); }
Complex eisenstein_e4(const ModuliPoint& tau) { return 1.0 + 240.0 * lambert_series(tau, 3); }
Complex eisenstein_e6(const ModuliPoint& tau) { return 1.0 - 504.0 * lambert_series(tau, 5); }

QuasiPeriods eta_periods(const ModuliPoint& tau) {
  const Complex eta1 = pi * pi / 3.0 * eisenstein_e2(tau);
  return {eta1, eta1 * tau.tau() - two_pi_i};
}

namespace {

struct Reduction {
  Complex z0;
  long long m;
  long long n;
};

Reduction reduce(Complex z, const ModuliPoint& tau) {
  const Complex t = tau.tau();
  const double mf = std::round(z.imag() / t.imag());
  const Complex shifted = z - mf * t;
  const double nf = std::round(shifted.real());
  return {shifted - nf, static_cast<long long>(mf), static_cast<long long>(nf)};
}

}  // namespace

double lattice_distance(Complex z, const ModuliPoint& tau) {
  const Complex t = tau.tau();
  const double mf = std::round(z.imag() / t.imag());
  double best = std::numeric_limits<double>::infinity();
  for (double m = mf - 1; m <= mf + 1; m += 1) {
    const double nf = std::round((z - m * t).real());
    for (double n = nf - 1; n <= nf + 1; n += 1) best = std::min(best, std::abs(z - m * t - n));
  }
  return best;
}

ThetaJet theta_jet(Complex z, const ModuliPoint& tau) {
  ensure_finite(z, "theta argument");
  const Reduction red = reduce(z, tau);
  const Complex t = tau.tau();
  const Complex v = pi * red.z0;
  const Complex ipit{0.0, pi};

  // theta_1 and its first three derivatives in v, and theta_1'(0)
  ComplexAccumulator s0, s1, s2, s3, d0;
  const double im_v = std::abs(v.imag());
  for (int k = 0; k <= max_series_terms; ++k) {
    const double h = k + 0.5;
    const double odd = 2.0 * k + 1.0;
    const Complex qk = std::exp(ipit * t * (h * h));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex s = std::sin(odd * v);
    const Complex c = std::cos(odd * v);
    s0.add(sign * qk * s);
    s1.add(sign * qk * odd * c);
    s2.add(-sign * qk * odd * odd * s);
    s3.add(-sign * qk * odd * odd * odd * c);
    d0.add(sign * qk * odd);
    const double bound = std::abs(qk) * std::exp(odd * im_v) * odd * odd * odd;
    if (k >= 1 && bound < 1e-18 * std::max(std::abs(s1.value()), std::abs(d0.value()))) {
      const Complex th = s0.value();
      const Complex r1 = pi * s1.value() / th;
      const Complex r2 = pi * pi * s2.value() / th;
      const Complex r3 = pi * pi * pi * s3.value() / th;
      ThetaJet jet;
      const Complex base = th / (pi * d0.value());
      const double parity = ((red.m + red.n) % 2 == 0) ? 1.0 : -1.0;
      const double md = static_cast<double>(red.m);
      jet.value = parity * std::exp(-ipit * (md * md) * t - two_pi_i * md * red.z0) * base;
      jet.log_d1 = r1 - two_pi_i * md;
      jet.log_d2 = r2 - r1 * r1;
      jet.log_d3 = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
      return jet;
    }
  }
  throw ConvergenceError("theta series did not converge: Im(tau) = " + std::to_string(t.imag()));
}

namespace {

void reject_pole(Complex z, const ModuliPoint& tau, const char* who) {
  if (lattice_distance(z, tau) < pole_threshold) {
    throw PoleProximityError(std::string(who) + ": argument within 1e-8 of a lattice point");
  }
}

}  // namespace

Complex sigma(Complex z, const ModuliPoint& tau) {
  const Complex eta1 = eta_periods(tau).eta1;
  return std::exp(0.5 * eta1 * z * z) * theta_jet(z, tau).value;
}

Complex zeta_fn(Complex z, const ModuliPoint& tau) {
  reject_pole(z, tau, "zeta_fn");
  return theta_jet(z, tau).log_d1 + eta_periods(tau).eta1 * z;
}

WpValue wp(Complex z, const ModuliPoint& tau) {
  reject_pole(z, tau, "wp");
  const ThetaJet jet = theta_jet(z, tau);
  return {-jet.log_d2 - eta_periods(tau).eta1, -jet.log_d3};
}

GInvariants g_invariants(const ModuliPoint& tau) {
  const double p4 = pi * pi * pi * pi;
  return {4.0 * p4 / 3.0 * eisenstein_e4(tau), 8.0 * p4 * pi * pi / 27.0 * eisenstein_e6(tau)};
}

Complex lattice_eisenstein_g(int weight, const ModuliPoint& tau, const LatticeTruncation& trunc,
                             int parallelism) {
  if (weight < 2) throw DomainError("lattice_eisenstein_g: weight must be >= 2");
  ShiftedLatticeSum sum;
  sum.tau = tau.tau();
  sum.weight = weight;
  return lattice_power_sum(sum, trunc, parallelism);
}

}  // namespace ellpolylog
