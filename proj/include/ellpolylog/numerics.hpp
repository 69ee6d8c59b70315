#pragma once

// Deterministic complex-arithmetic utilities shared by every module:
// lattice enumeration, compensated summation, central differences with
// Richardson extrapolation, trapezoid-rule Cauchy coefficients and contour
// integrals.  Everything here is pure; nothing keeps state between calls.

#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string_view>
#include <vector>

namespace ellpolylog {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

// Throws NonFiniteError naming `context` if v has a NaN or Inf part.
void ensure_finite(Complex v, std::string_view context);

enum class LatticeOrdering {
  eisenstein,  // rows m = 0, 1, -1, 2, -2, ...; inside a row n = 0, 1, -1, ...
  box,         // square shells max(|m|,|n|) = 1, 2, ..., R
};

struct LatticeTruncation {
  int shell_radius = 2000;
  LatticeOrdering ordering = LatticeOrdering::eisenstein;
  bool compensated_summation = true;

  void validate() const;
};

struct DiffConfig {
  double step = 1e-4;
  int richardson_levels = 2;

  void validate() const;
};

struct CauchyConfig {
  double radius = 0.5;
  int samples = 128;
  // Re-run at twice the samples and inspect the high-frequency half of the
  // spectrum; throws AliasingError when either looks wrong.
  bool self_check = true;

  void validate() const;
};

struct LatticePoint {
  int m = 0;
  int n = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// All (m,n) != (0,0) with max(|m|,|n|) <= shell_radius, in trunc.ordering.
std::vector<LatticePoint> enumerate_lattice(const LatticeTruncation& trunc);

// Neumaier-compensated accumulator for complex values (real and imaginary
// parts compensated independently).  With `compensated == false` it degrades
// to plain left-to-right addition.
class ComplexAccumulator {
 public:
  explicit ComplexAccumulator(bool compensated = true) : compensated_(compensated) {}

  void add(Complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }

  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  void add_part(double& sum, double& comp, double x) {
    if (!compensated_) {
      sum += x;
      return;
    }
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  bool compensated_;
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

using ComplexFunction = std::function<Complex(Complex)>;
using VectorFunction = std::function<std::vector<Complex>(Complex)>;

// Central-difference derivative of f at `at` along the real direction,
// Richardson-extrapolated cfg.richardson_levels times (steps h, h/2, ...).
Complex finite_diff(const ComplexFunction& f, Complex at, const DiffConfig& cfg);

// Component-wise version for vector-valued f; every evaluation of f must
// return the same length.
std::vector<Complex> finite_diff(const VectorFunction& f, Complex at, const DiffConfig& cfg);

// Taylor coefficients c_0..c_order of f at 0 by the trapezoid rule on the
// circle of cfg.radius.
std::vector<Complex> cauchy_coeffs(const ComplexFunction& f, int order, const CauchyConfig& cfg);

// Counter-clockwise trapezoid approximation of the contour integral of f
// over the circle |z - center| = radius.
Complex contour_integral(const ComplexFunction& f, Complex center, double radius, int samples);

// Runs fn(i) for i in [0, count) on up to `parallelism` threads and returns
// the results indexed by i.  Output is independent of the thread count.
std::vector<Complex> parallel_map(int count, int parallelism, const std::function<Complex(int)>& fn);

// Character (m,n) -> zeta_N^(m*b - n*a) on Z^2, zeta_N = exp(2 pi i / N).
struct Twist {
  int a = 0;
  int b = 0;
  int N = 1;
};

// sum over (m,n) of twist(m,n) / (m tau + n + shift)^weight.
// The origin is skipped when shift == 0.  With eisenstein ordering each
// inner n-row is completed by an Euler-Maclaurin tail so that "inner sum
// first" means the full inner sum; box ordering is a plain truncation.
struct ShiftedLatticeSum {
  Complex tau;
  int weight = 3;
  Complex shift{0.0, 0.0};
  Twist twist;
};

Complex lattice_power_sum(const ShiftedLatticeSum& sum, const LatticeTruncation& trunc,
                          int parallelism = 1);

// exp(2 pi i k / N) with k reduced mod N first, so equal residues give
// bit-identical values.
Complex root_of_unity(long long k, int N);

}  // namespace ellpolylog
