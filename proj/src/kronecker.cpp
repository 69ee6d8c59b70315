#include "ellpolylog/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ellpolylog/errors.hpp"

namespace ellpolylog {

namespace {

void require_off_lattice(Complex z, const ModuliPoint& tau, double margin, const char* what) {
  if (lattice_distance(z, tau) < margin) {
    throw PoleProximityError(std::string(what) + " is too close to a lattice point");
  }
}

// exp(-2 pi i c w)
Complex translation_character(int c, Complex w) { return std::exp(-two_pi_i * static_cast<double>(c) * w); }

// distance from w to the nearest D-torsion point (c tau + d)/D, lattice included
double torsion_distance(Complex w, const ModuliPoint& tau, int D) {
  double best = lattice_distance(w, tau);
  for (int c = 0; c < D; ++c) {
    for (int d = 0; d < D; ++d) {
      const Complex t = (static_cast<double>(c) * tau.tau() + static_cast<double>(d)) / static_cast<double>(D);
      best = std::min(best, lattice_distance(w - t, tau));
    }
  }
  return best;
}

}  // namespace

Complex theta(Complex z, const ModuliPoint& tau) { return theta_jet(z, tau).value; }

Complex jacobi_J(const KroneckerPoint& p) {
  require_off_lattice(p.z, p.tau, pole_threshold, "jacobi_J: z");
  require_off_lattice(p.w, p.tau, pole_threshold, "jacobi_J: w");
  const Complex value = theta(p.z + p.w, p.tau) / (theta(p.z, p.tau) * theta(p.w, p.tau));
  ensure_finite(value, "jacobi_J");
  return value;
}

Complex quasi_period_factor(int c, int /*d*/, const KroneckerPoint& p) {
  // theta's translation laws give the same multiplier for theta(z+w+...)
  // and theta(z+...) up to exp(-2 pi i c w); the d-translate is trivial.
  return translation_character(c, p.w);
}

double heat_residual(const KroneckerPoint& p, const DiffConfig& cfg) {
  cfg.validate();
  const double margin = 10.0 * cfg.step;
  require_off_lattice(p.z, p.tau, margin, "heat_residual: z");
  require_off_lattice(p.w, p.tau, margin, "heat_residual: w");

  const Complex J = jacobi_J(p);
  const Complex d_tau = finite_diff(
      [&](Complex t) { return jacobi_J({p.z, p.w, ModuliPoint(t)}); }, p.tau.tau(), cfg);
  const Complex d_zw = finite_diff(
      [&](Complex z) {
        return finite_diff([&](Complex w) { return jacobi_J({z, w, p.tau}); }, p.w, cfg);
      },
      p.z, cfg);
  return std::abs(two_pi_i * d_tau - d_zw) / std::max(1.0, std::abs(J));
}

Complex kronecker_d_variant(Complex z, Complex w, const ModuliPoint& tau, int D) {
  if (D < 1) throw DomainError("kronecker_d_variant: D must be >= 1");
  const double Dd = D;
  return Dd * Dd * jacobi_J({z, Dd * w, tau}) - Dd * jacobi_J({Dd * z, w, tau});
}

double shortest_lattice_vector(const ModuliPoint& tau) {
  const Complex t = tau.tau();
  // |m tau + n| >= |m| Im(tau), and |1| is always a candidate
  const int mmax = static_cast<int>(std::ceil(1.0 / t.imag())) + 1;
  double best = 1.0;
  for (int m = 1; m <= mmax; ++m) {
    const double nf = std::round(-(static_cast<double>(m) * t).real());
    for (double n = nf - 1; n <= nf + 1; n += 1) best = std::min(best, std::abs(static_cast<double>(m) * t + n));
  }
  return best;
}

CauchyConfig default_s_contour(const ModuliPoint& tau) {
  CauchyConfig cfg;
  cfg.radius = 0.5 * shortest_lattice_vector(tau);
  cfg.samples = 128;
  return cfg;
}

DVariantCoeffs s_coeffs(Complex z, const ModuliPoint& tau, int D, int n, const std::optional<CauchyConfig>& cfg) {
  if (D < 1) throw DomainError("s_coeffs: D must be >= 1");
  if (n < 0 || n > max_s_order) throw DomainError("s_coeffs: n must be in [0, 16]");
  const double Dd = D;
  require_off_lattice(z, tau, pole_threshold, "s_coeffs: z");
  require_off_lattice(Dd * z, tau, pole_threshold, "s_coeffs: D z");

  const CauchyConfig contour = cfg.value_or(default_s_contour(tau));
  if (contour.radius >= shortest_lattice_vector(tau)) {
    throw DomainError("s_coeffs: contour radius encloses a pole of J(z, w) in w");
  }
  auto f = [&](Complex w) {
    return Dd * Dd * jacobi_J({z, w, tau}) - Dd * jacobi_J({Dd * z, w / Dd, tau});
  };
  return {D, z, tau, cauchy_coeffs(f, n, contour)};
}

Complex dlog_kato_siegel(Complex z, const ModuliPoint& tau, int D) {
  if (D < 2) throw DomainError("dlog_kato_siegel: D must be >= 2");
  // Dz on the lattice <=> z is a D-torsion point
  require_off_lattice(static_cast<double>(D) * z, tau, pole_threshold, "dlog_kato_siegel: D-torsion point");
  return s_coeffs(z, tau, D, 0).coeffs[0];
}

Complex distribution_cocycle(int c, int /*d*/, Complex z, const ModuliPoint& /*tau*/, int D) {
  // only the c tau part of the torsion translate contributes a multiplier
  return static_cast<double>(D) / translation_character(c, z);
}

double distribution_residual(const KroneckerPoint& p, int D) {
  if (D < 1) throw DomainError("distribution_residual: D must be >= 1");
  if (D == 1) return 0.0;
  const double Dd = D;
  require_off_lattice(p.z, p.tau, pole_threshold, "distribution_residual: z");
  require_off_lattice(Dd * p.z, p.tau, pole_threshold, "distribution_residual: D z");
  if (torsion_distance(p.w, p.tau, D) < 1e-6) {
    throw PoleProximityError("distribution_residual: w within 1e-6 of a D-torsion point");
  }

  ComplexAccumulator lhs;
  for (int c = 0; c < D; ++c) {
    for (int d = 0; d < D; ++d) {
      if (c == 0 && d == 0) continue;
      const Complex t = (static_cast<double>(c) * p.tau.tau() + static_cast<double>(d)) / Dd;
      lhs.add(distribution_cocycle(c, d, p.z, p.tau, D) * jacobi_J({Dd * p.z, p.w + t, p.tau}));
    }
  }
  const Complex rhs = kronecker_d_variant(p.z, p.w, p.tau, D);
  return std::abs(lhs.value() - rhs) / std::max(1.0, std::abs(jacobi_J(p)));
}

double pole_removal_ratio(Complex z, const ModuliPoint& tau, int D, double radius, int samples) {
  const Complex s0 = s_coeffs(z, tau, D, 0).coeffs[0];
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Complex w = radius * std::polar(1.0, 2.0 * pi * j / samples);
    worst = std::max(worst, std::abs(kronecker_d_variant(z, w, tau, D)));
  }
  return worst / std::max(1.0, std::abs(s0));
}

}  // namespace ellpolylog
