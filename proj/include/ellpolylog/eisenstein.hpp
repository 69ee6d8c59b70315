#pragma once

// Level-N Eisenstein series
//
//   F^(k)_(a,b)(tau) = (-1)^(k+1) (k-1)! sum' zeta_N^(m b - n a) / (m tau + n)^k
//
// evaluated either as a truncated double sum (naive) or with the inner
// n-sums in closed form (lipschitz).  For k <= 2 the double sum is only
// conditionally convergent; both modes then mean Eisenstein summation
// (inner n symmetric, then m symmetric).

#include "ellpolylog/numerics.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace ellpolylog {

enum class EisensteinMode { naive, lipschitz };

struct EisensteinQuery {
  int a = 0;
  int b = 1;
  int N = 2;
  int k = 3;
  ModuliPoint tau{Complex(0.0, 1.0)};
  LatticeTruncation trunc{};
  EisensteinMode mode = EisensteinMode::lipschitz;

  // Throws DomainError for N < 2, k < 1 or (a,b) = (0,0) mod N.
  void validate() const;
};

// Throws ConvergenceError for k <= 2 with box truncation, and for k = 1
// with a = 0 mod N in lipschitz mode (the m-series does not converge).
Complex F(const EisensteinQuery& q);

// What F_tilde does when (Da, Db) = (0,0) mod N.
enum class DegenerateLabel {
  reject,  // DomainError
  extend,  // use F_(0,0) = (-1)^(k+1) (k-1)! G_k(tau), the same sum without a character
};

// D^2 F_(a,b) - D^(2-k) F_(Da,Db).
Complex F_tilde(const EisensteinQuery& q, int D, DegenerateLabel degenerate = DegenerateLabel::reject);

// F at k = 2 by Eisenstein summation of the truncated double sum; the value
// depends on that order.  Box ordering throws ConvergenceError.
Complex eisenstein_sum_k2(int a, int b, int N, const ModuliPoint& tau, const LatticeTruncation& trunc);

// sum_n zeta_N^(j n) / (x + n)^s for x off the integers, symmetric in n
// when s = 1.
Complex twisted_row_sum(Complex x, int j, int N, int s);

// B_k(x)
double bernoulli_polynomial(int k, double x);

}  // namespace ellpolylog
