#include "ellpolylog/polylog.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ellpolylog/errors.hpp"
#include "ellpolylog/kronecker.hpp"

namespace ellpolylog {

namespace {

int mod(long long x, int N) { return static_cast<int>(((x % N) + N) % N); }

double factorial(int n) {
  double f = 1.0;
  for (int t = 2; t <= n; ++t) f *= t;
  return f;
}

// Dz on the lattice <=> z in E[D]
void reject_torsion(Complex z, const ModuliPoint& tau, int D, double margin, const char* who) {
  for (int c = 0; c < D; ++c) {
    for (int d = 0; d < D; ++d) {
      const Complex t = (static_cast<double>(c) * tau.tau() + static_cast<double>(d)) / static_cast<double>(D);
      if (lattice_distance(z - t, tau) < margin) {
        throw PoleProximityError(std::string(who) + ": z too close to a " + std::to_string(D) + "-torsion point");
      }
    }
  }
}

LogValuedForm l_form_unchecked(Complex z, const ModuliPoint& tau, int D, int n) {
  reject_torsion(z, tau, D, torsion_margin, "l_form");
  const DVariantCoeffs s = s_coeffs(z, tau, D, n);
  LogValuedForm out(n, 1);
  LogFiber& dz = out.component(Differential::dz);
  for (int k = 0; k <= n; ++k) dz.add({k, 0}, factorial(k) * s.coeffs[static_cast<std::size_t>(k)]);
  return out;
}

void require_level(int n, const char* who) {
  if (n < 0 || n > max_level) {
    throw DomainError(std::string(who) + ": level must be in [0, " + std::to_string(max_level) + "]");
  }
}

}  // namespace

void TorsionLabel::validate() const {
  if (N < 2) throw DomainError("TorsionLabel: N must be >= 2");
  if (D < 1) throw DomainError("TorsionLabel: D must be >= 1");
  if (mod(a, N) == 0 && mod(b, N) == 0) throw DomainError("TorsionLabel: (a,b) must be nonzero mod N");
}

LogValuedForm l_form(Complex z, const ModuliPoint& tau, int D, int n) {
  require_level(n, "l_form");
  return l_form_unchecked(z, tau, D, n);
}

LogValuedForm L_form(Complex z, const ModuliPoint& tau, int D, int n) {
  require_level(n, "L_form");
  return ks_lift(l_form_unchecked(z, tau, D, n + 1));
}

double closedness_residual(const FormField& form, Complex z, const ModuliPoint& tau, const DiffConfig& cfg) {
  cfg.validate();
  const LogValuedForm center = form(z, tau);
  if (center.degree() != 1) throw DomainError("closedness_residual: form must have degree 1");
  const int n = center.level();
  const auto basis = LogFiber::basis(n);
  const auto dim = static_cast<Eigen::Index>(basis.size());

  auto coeffs = [&](const LogValuedForm& f, Differential d) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index r = 0; r < dim; ++r) v(r) = f.component(d).coeff(basis[static_cast<std::size_t>(r)]);
    return v;
  };
  auto as_vector = [](const Eigen::VectorXcd& v) { return std::vector<Complex>(v.data(), v.data() + v.size()); };

  const std::vector<Complex> d_tau_f = finite_diff(
      [&](Complex t) { return as_vector(coeffs(form(z, ModuliPoint(t)), Differential::dz)); }, tau.tau(), cfg);
  const std::vector<Complex> d_z_g = finite_diff(
      [&](Complex x) { return as_vector(coeffs(form(x, tau), Differential::dtau)); }, z, cfg);

  const ConnectionMatrices a = connection_matrices(n, connection_data(tau));
  const Eigen::VectorXcd f = coeffs(center, Differential::dz);
  const Eigen::VectorXcd g = coeffs(center, Differential::dtau);
  const Eigen::VectorXcd residual = Eigen::Map<const Eigen::VectorXcd>(d_z_g.data(), dim) -
                                    Eigen::Map<const Eigen::VectorXcd>(d_tau_f.data(), dim) + a.dz * g -
                                    a.dtau * f;
  const double scale = center.max_abs();
  const double worst = residual.cwiseAbs().maxCoeff();
  return scale > 0.0 ? worst / scale : worst;
}

double closedness_residual(Complex z, const ModuliPoint& tau, int D, int n, const DiffConfig& cfg) {
  require_level(n, "closedness_residual");
  cfg.validate();
  reject_torsion(z, tau, D, std::max(torsion_margin, 10.0 * cfg.step), "closedness_residual");
  return closedness_residual([&](Complex x, const ModuliPoint& t) { return L_form(x, t, D, n); }, z, tau, cfg);
}

Complex specialize_eisenstein(const TorsionLabel& label, const ModuliPoint& tau, int k,
                              const LatticeTruncation& trunc, EisensteinMode mode) {
  label.validate();
  if (k < 0) throw DomainError("specialize_eisenstein: k must be >= 0");
  trunc.validate();
  const int D = label.D;
  const int N = label.N;
  if (D == 1) return Complex{0.0, 0.0};
  const int w = k + 1;
  const int ta = mod(static_cast<long long>(D) * label.a, N);
  const int tb = mod(static_cast<long long>(D) * label.b, N);
  const int j = mod(-static_cast<long long>(ta), N);
  if (mode == EisensteinMode::lipschitz && w == 1 && j == 0) {
    throw ConvergenceError("specialize_eisenstein: k = 0 with D a = 0 mod N has no convergent summation");
  }
  const Complex t = tau.tau();
  const double Dd = D;

  ComplexAccumulator total;
  for (int c = 0; c < D; ++c) {
    for (int d = 0; d < D; ++d) {
      if (c == 0 && d == 0) continue;
      const Complex shift = (static_cast<double>(c) * t + static_cast<double>(d)) / Dd;
      const Complex phase = root_of_unity(static_cast<long long>(c) * label.b - static_cast<long long>(d) * label.a, N);
      Complex inner;
      if (mode == EisensteinMode::naive) {
        ShiftedLatticeSum sum;
        sum.tau = t;
        sum.weight = w;
        sum.shift = shift;
        sum.twist = {ta, tb, N};
        inner = lattice_power_sum(sum, trunc);
      } else {
        ComplexAccumulator rows;
        rows.add(twisted_row_sum(shift, j, N, w));
        int small = 0;
        for (int m = 1;; ++m) {
          if (m > 100000) throw ConvergenceError("specialize_eisenstein: m-series did not converge");
          const double md = m;
          const Complex up = twisted_row_sum(md * t + shift, j, N, w);
          const Complex down = twisted_row_sum(-md * t + shift, j, N, w);
          rows.add(root_of_unity(static_cast<long long>(m) * tb, N) * up +
                   root_of_unity(-static_cast<long long>(m) * tb, N) * down);
          const double size = std::max(std::abs(up), std::abs(down));
          small = (size <= 1e-17 * std::max(std::abs(rows.value()), 1e-300)) ? small + 1 : 0;
          if (small >= 3) break;
        }
        inner = rows.value();
      }
      total.add(phase * inner);
    }
  }
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const Complex value = sign * factorial(k) * std::pow(Dd, 1 - k) * total.value();
  ensure_finite(value, "specialize_eisenstein");
  return value;
}

}  // namespace ellpolylog
