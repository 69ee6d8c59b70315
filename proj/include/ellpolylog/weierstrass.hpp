#pragma once

// Weierstrass functions for the lattice Z + tau Z.
//
// Everything is built on one rapidly convergent kernel, the normalized odd
// Jacobi theta function
//
//     theta_ref(z) = theta_1(pi z | tau) / (pi theta_1'(0 | tau)),
//
// which has theta_ref(z)/z -> 1 at 0 and simple zeros exactly on the
// lattice.  The quasi-period eta1 = zeta(z+1) - zeta(z) comes from the
// weight-2 Eisenstein q-series, and then
//
//     sigma(z) = exp(eta1 z^2 / 2) theta_ref(z),
//     zeta(z)  = theta_ref'(z)/theta_ref(z) + eta1 z,
//     wp(z)    = -zeta'(z).
//
// eta1 here is the classical quasi-period (eta1(i) = +pi).  The connection
// formulas in logsheaf use the opposite sign; see connection_eta().

#include "ellpolylog/numerics.hpp"

namespace ellpolylog {

// A point of the upper half plane.
class ModuliPoint {
 public:
  // Throws DomainError unless Im(tau) > 0 and tau is finite.
  explicit ModuliPoint(Complex tau);

  Complex tau() const { return tau_; }
  // exp(2 pi i tau)
  Complex q() const;

 private:
  Complex tau_;
};

struct QuasiPeriods {
  Complex eta1;  // zeta(z+1) - zeta(z)
  Complex eta2;  // eta1 * tau - 2 pi i  (Legendre relation)
};

QuasiPeriods eta_periods(const ModuliPoint& tau);

// Eisenstein series E_2, E_4, E_6 normalized to constant term 1.
Complex eisenstein_e2(const ModuliPoint& tau);
Complex eisenstein_e4(const ModuliPoint& tau);
Complex eisenstein_e6(const ModuliPoint& tau);

// Value and logarithmic derivatives of theta_ref at z.
struct ThetaJet {
  Complex value;
  Complex log_d1;  // theta'/theta
  Complex log_d2;  // (log theta)''
  Complex log_d3;  // (log theta)'''
};

// Evaluates the theta kernel after reducing z into the period parallelogram
// centred at the origin; the translation laws
//   theta(z+1) = -theta(z),  theta(z+tau) = -exp(-pi i tau - 2 pi i z) theta(z)
// restore the original argument exactly.
ThetaJet theta_jet(Complex z, const ModuliPoint& tau);

// Euclidean distance from z to the nearest point of Z + tau Z.
double lattice_distance(Complex z, const ModuliPoint& tau);

// Points closer than this to the lattice are rejected as pole evaluations.
inline constexpr double pole_threshold = 1e-8;

Complex sigma(Complex z, const ModuliPoint& tau);
Complex zeta_fn(Complex z, const ModuliPoint& tau);

struct WpValue {
  Complex wp;
  Complex wp_prime;
};

WpValue wp(Complex z, const ModuliPoint& tau);

struct GInvariants {
  Complex g2;
  Complex g3;
};

// g2 = 60 G_4, g3 = 140 G_6 from the E_4, E_6 q-series.
GInvariants g_invariants(const ModuliPoint& tau);

// Brute-force lattice sum G_k(tau) = sum' (m tau + n)^(-k).  Weight 2 is
// taken in Eisenstein order and then equals eta1.
Complex lattice_eisenstein_g(int weight, const ModuliPoint& tau, const LatticeTruncation& trunc,
                             int parallelism = 1);

}  // namespace ellpolylog
