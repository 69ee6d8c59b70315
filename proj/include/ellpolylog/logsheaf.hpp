#pragma once

// Trivialized fibers of the logarithm sheaves on the universal cover.
//
// A fiber at level n is spanned by the divided powers w[i,j] = omega^[i] eta^[j]
// with i + j <= n; omega = [dw] and eta = [wp(w) dw].  Coefficients are
// stored sparsely.  The connection formulas below use the quasi-period in
// the normalization of connection_eta(), which is minus the classical eta1.

#include <compare>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "ellpolylog/numerics.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace ellpolylog {

inline constexpr int max_level = 12;

struct DividedIndex {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const DividedIndex&, const DividedIndex&) = default;
};

class LogFiber {
 public:
  explicit LogFiber(int level = 0);

  int level() const { return level_; }
  const std::map<DividedIndex, Complex>& terms() const { return coeffs_; }

  // Absent indices read as zero.
  Complex coeff(DividedIndex idx) const;
  // Adds v to the coefficient of idx.  Exact zeros are not stored; indices
  // outside the level throw DomainError.
  void add(DividedIndex idx, Complex v);

  bool in_range(DividedIndex idx) const { return idx.i >= 0 && idx.j >= 0 && idx.i + idx.j <= level_; }
  bool is_zero() const;
  double max_abs() const;

  // The basis w[i,j], i + j <= level, ordered by total degree then by j.
  static std::vector<DividedIndex> basis(int level);
  static LogFiber unit(int level, DividedIndex idx);

  friend bool operator==(const LogFiber& a, const LogFiber& b);
  LogFiber& operator+=(const LogFiber& other);
  LogFiber& operator-=(const LogFiber& other);
  LogFiber& operator*=(Complex s);

 private:
  int level_;
  std::map<DividedIndex, Complex> coeffs_;
};

LogFiber operator+(LogFiber a, const LogFiber& b);
LogFiber operator-(LogFiber a, const LogFiber& b);
LogFiber operator*(Complex s, LogFiber a);

enum class Differential { one, dz, dtau, dz_dtau };

// Form of degree 0, 1 or 2 with fiber-valued coefficients.  Degree 0 has
// the `one` component, degree 1 has dz and dtau, degree 2 has dz_dtau.
class LogValuedForm {
 public:
  LogValuedForm(int level, int degree);

  int level() const { return level_; }
  int degree() const { return degree_; }
  const LogFiber& component(Differential d) const;
  LogFiber& component(Differential d);
  std::vector<Differential> differentials() const;
  double max_abs() const;

  friend bool operator==(const LogValuedForm& a, const LogValuedForm& b);

 private:
  int level_;
  int degree_;
  std::map<Differential, LogFiber> parts_;
};

// w[i,j] * w[k,l] = C(i+k,i) C(j+l,j) w[i+k,j+l]
LogFiber dp_multiply(const LogFiber& a, const LogFiber& b);

// Drops the top total degree.  Throws DomainError at level 0.
LogFiber transition(const LogFiber& v);
LogValuedForm transition(const LogValuedForm& form);

enum class EtaDerivative {
  finite_difference,  // central differences on the q-series, step 1e-5, 2 Richardson levels
  q_series,           // Ramanujan's identity for E_2'
};

struct ConnectionData {
  Complex eta;   // connection_eta(tau)
  Complex deta;  // its tau-derivative
};

// The quasi-period entering the connection: -eta1 with eta1 the classical
// quasi-period from eta_periods (so -pi at tau = i).
Complex connection_eta(const ModuliPoint& tau);
ConnectionData connection_data(const ModuliPoint& tau, EtaDerivative mode = EtaDerivative::finite_difference);

// dz-part:   w[i,j] -> -(i+1) eta w[i+1,j] + (j+1) w[i,j+1]
LogValuedForm rel_connection(const LogFiber& v, const ModuliPoint& tau);

// dz-part as rel_connection; dtau-part
//   w[k,j] -> (j - k) eta/(2 pi i) w[k,j] + (j+1)/(2 pi i) w[k-1,j+1]
//             + (k+1) (eta' - eta^2/(2 pi i)) w[k+1,j-1]
LogValuedForm abs_connection(const LogFiber& v, const ModuliPoint& tau,
                             EtaDerivative mode = EtaDerivative::finite_difference);
LogValuedForm abs_connection(const LogFiber& v, const ConnectionData& data);

// dtau-coefficients of the Gauss-Manin connection on (omega, eta); column c
// holds the image of the c-th basis vector.
Eigen::Matrix2cd gauss_manin_matrix(const ModuliPoint& tau, EtaDerivative mode = EtaDerivative::finite_difference);

// Connection matrices on LogFiber::basis(n): column b is the image of the
// b-th basis vector.
struct ConnectionMatrices {
  Eigen::MatrixXcd dz;
  Eigen::MatrixXcd dtau;
};
ConnectionMatrices connection_matrices(int n, const ConnectionData& data);

// Max coefficient of the dz^dtau part of nabla o nabla over the basis at
// level n, i.e. of -d_tau A_z + A_z A_tau - A_tau A_z with d_tau by
// finite differences.
double curvature_residual(int n, const ModuliPoint& tau, const DiffConfig& cfg,
                          EtaDerivative mode = EtaDerivative::finite_difference);

// Kodaira-Spencer lift of a dz-form supported on the w[k,0] row at level
// n+1 to level n: c w[k,0] dz -> c w[k,0] dz + c/(2 pi i) w[k-1,0] dtau.
LogValuedForm ks_lift(const LogValuedForm& form);

}  // namespace ellpolylog
