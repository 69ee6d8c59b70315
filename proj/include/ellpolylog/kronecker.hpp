#pragma once

// The Kronecker theta kernel
//
//     J(z, w, tau) = theta(z + w) / (theta(z) theta(w)),
//
// its D-variant D^2 J(z, D w) - D J(D z, w) (pole along w = 0 removed), the
// Taylor coefficients s_k^D of that variant, the distribution relation and
// the logarithmic derivative of the Kato-Siegel function.
//
// theta is the normalized odd Jacobi theta function.  Written as
// exp(c z^2 / 2) sigma(z) it needs c = -eta1 (classical eta1); that is the
// only choice for which J satisfies 2 pi i d_tau J = d_z d_w J.

#include <optional>
#include <vector>

#include "ellpolylog/numerics.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace ellpolylog {

struct KroneckerPoint {
  Complex z;
  Complex w;
  ModuliPoint tau;
};

Complex theta(Complex z, const ModuliPoint& tau);

// Throws PoleProximityError if z or w is within 1e-8 of the lattice.  A
// zero of the numerator (z + w on the lattice) just gives a value near 0.
Complex jacobi_J(const KroneckerPoint& p);

// chi with J(z + c tau + d, w) = chi * J(z, w); equals exp(-2 pi i c w).
Complex quasi_period_factor(int c, int d, const KroneckerPoint& p);

// |2 pi i d_tau J - d_z d_w J| / max(1, |J|) by finite differences.
double heat_residual(const KroneckerPoint& p, const DiffConfig& cfg);

// D^2 J(z, D w) - D J(D z, w): the coefficient of the D-variant Kronecker
// section in the universal-cover trivialization.
Complex kronecker_d_variant(Complex z, Complex w, const ModuliPoint& tau, int D);

inline constexpr int max_s_order = 16;

struct DVariantCoeffs {
  int D = 1;
  Complex z;
  ModuliPoint tau;
  std::vector<Complex> coeffs;  // s_0^D ... s_n^D
};

// Contour for s_coeffs: half the length of the shortest nonzero lattice
// vector, 128 samples.  The only singularities of
// w -> D^2 J(z,w) - D J(Dz,w/D) are the nonzero points of the lattice.
CauchyConfig default_s_contour(const ModuliPoint& tau);

// Length of the shortest nonzero vector of Z + tau Z.
double shortest_lattice_vector(const ModuliPoint& tau);

// Taylor coefficients in w of D^2 J(z,w,tau) - D J(Dz, w/D, tau), k = 0..n.
DVariantCoeffs s_coeffs(Complex z, const ModuliPoint& tau, int D, int n,
                        const std::optional<CauchyConfig>& cfg = std::nullopt);

// d log of the Kato-Siegel function theta_D, i.e. s_0^D(z, tau).
Complex dlog_kato_siegel(Complex z, const ModuliPoint& tau, int D);

// Multiplier of the translate by the D-torsion point (c tau + d)/D in the
// distribution relation
//   sum_{(c,d) != 0 mod D} chi_{c,d}(z) J(Dz, w + (c tau + d)/D)
//     = D^2 J(z, D w) - D J(D z, w),
// chi_{c,d}(z) = D exp(2 pi i c z) for representatives 0 <= c, d < D.
Complex distribution_cocycle(int c, int d, Complex z, const ModuliPoint& tau, int D);

// |LHS - RHS| / max(1, |J(z,w)|) for the relation above.
double distribution_residual(const KroneckerPoint& p, int D);

// max over |w| = radius of |D^2 J(z,Dw) - D J(Dz,w)| divided by
// max(1, |s_0^D(z)|).  Stays O(1) because the D-variant has no pole at
// w = 0; a surviving pole would show up as (D^2 - D)/radius.
double pole_removal_ratio(Complex z, const ModuliPoint& tau, int D, double radius = 1e-3,
                          int samples = 64);

}  // namespace ellpolylog
