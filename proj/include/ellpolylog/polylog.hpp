#pragma once

// The infinitesimal and absolute Kronecker sections
//
//   l_n^D = sum_{k<=n} k! s_k^D(z,tau) w[k,0] dz,
//   L_n^D = ks_lift(l_{n+1}^D),
//
// their closedness under the absolute connection, and the specialization of
// the polylogarithm at torsion points to Eisenstein series.

#include <functional>

#include "ellpolylog/eisenstein.hpp"
#include "ellpolylog/logsheaf.hpp"
#include "ellpolylog/numerics.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace ellpolylog {

struct TorsionLabel {
  int a = 1;
  int b = 0;
  int N = 2;
  int D = 2;

  // Throws DomainError unless N >= 2, D >= 1 and (a,b) != (0,0) mod N.
  void validate() const;
};

// Evaluation points within this distance of a D-torsion point are rejected.
inline constexpr double torsion_margin = 1e-6;

LogValuedForm l_form(Complex z, const ModuliPoint& tau, int D, int n);
LogValuedForm L_form(Complex z, const ModuliPoint& tau, int D, int n);

// A degree-1 form depending on (z, tau).
using FormField = std::function<LogValuedForm(Complex z, const ModuliPoint& tau)>;

// Max coefficient of the dz^dtau part of nabla(form) at (z, tau), divided by
// the largest coefficient of form(z, tau).  Partial derivatives of the
// coefficients are taken by finite differences.
double closedness_residual(const FormField& form, Complex z, const ModuliPoint& tau, const DiffConfig& cfg);

// The same for L_n^D, with the stencil kept away from E[D].
double closedness_residual(Complex z, const ModuliPoint& tau, int D, int n, const DiffConfig& cfg);

// (-1)^k k! D^(1-k) sum_{(c,d) != 0 mod D} sum_{(m,n)} chi(D m + c, D n + d)
//   / (m tau + n + (c tau + d)/D)^(k+1),   chi(M, N') = zeta_N^(M b - N' a),
// which equals F_tilde at weight k+1.  k = 0, 1 are Eisenstein-summed
// (lipschitz, or naive with eisenstein ordering).
Complex specialize_eisenstein(const TorsionLabel& label, const ModuliPoint& tau, int k,
                              const LatticeTruncation& trunc = {},
                              EisensteinMode mode = EisensteinMode::lipschitz);

}  // namespace ellpolylog
