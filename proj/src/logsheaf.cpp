#include "ellpolylog/logsheaf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ellpolylog/errors.hpp"

namespace ellpolylog {

namespace {

constexpr int max_fiber_level = 64;

double binomial(int n, int k) {
  double r = 1.0;
  for (int t = 1; t <= k; ++t) r = r * static_cast<double>(n - k + t) / static_cast<double>(t);
  return std::round(r);
}

void require_level(int n, const char* who) {
  if (n < 0 || n > max_level) {
    throw DomainError(std::string(who) + ": level must be in [0, " + std::to_string(max_level) + "]");
  }
}

}  // namespace

LogFiber::LogFiber(int level) : level_(level) {
  if (level < 0 || level > max_fiber_level) throw DomainError("LogFiber: level out of range");
}

Complex LogFiber::coeff(DividedIndex idx) const {
  const auto it = coeffs_.find(idx);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void LogFiber::add(DividedIndex idx, Complex v) {
  if (!in_range(idx)) {
    throw DomainError("LogFiber: index (" + std::to_string(idx.i) + "," + std::to_string(idx.j) +
                      ") outside level " + std::to_string(level_));
  }
  if (v == Complex{}) return;
  coeffs_[idx] += v;
}

bool LogFiber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second == Complex{}; });
}

double LogFiber::max_abs() const {
  double m = 0.0;
  for (const auto& [idx, v] : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<DividedIndex> LogFiber::basis(int level) {
  std::vector<DividedIndex> out;
  for (int d = 0; d <= level; ++d) {
    for (int j = 0; j <= d; ++j) out.push_back({d - j, j});
  }
  return out;
}

LogFiber LogFiber::unit(int level, DividedIndex idx) {
  LogFiber f(level);
  f.add(idx, 1.0);
  return f;
}

bool operator==(const LogFiber& a, const LogFiber& b) {
  if (a.level_ != b.level_) return false;
  for (const auto& [idx, v] : a.coeffs_) {
    if (b.coeff(idx) != v) return false;
  }
  for (const auto& [idx, v] : b.coeffs_) {
    if (a.coeff(idx) != v) return false;
  }
  return true;
}

LogFiber& LogFiber::operator+=(const LogFiber& other) {
  if (other.level_ != level_) throw DomainError("LogFiber: level mismatch");
  for (const auto& [idx, v] : other.coeffs_) add(idx, v);
  return *this;
}

LogFiber& LogFiber::operator-=(const LogFiber& other) {
  if (other.level_ != level_) throw DomainError("LogFiber: level mismatch");
  for (const auto& [idx, v] : other.coeffs_) add(idx, -v);
  return *this;
}

LogFiber& LogFiber::operator*=(Complex s) {
  for (auto& kv : coeffs_) kv.second *= s;
  return *this;
}

LogFiber operator+(LogFiber a, const LogFiber& b) { return a += b; }
LogFiber operator-(LogFiber a, const LogFiber& b) { return a -= b; }
LogFiber operator*(Complex s, LogFiber a) { return a *= s; }

LogValuedForm::LogValuedForm(int level, int degree) : level_(level), degree_(degree) {
  switch (degree) {
    case 0:
      parts_.emplace(Differential::one, LogFiber(level));
      break;
    case 1:
      parts_.emplace(Differential::dz, LogFiber(level));
      parts_.emplace(Differential::dtau, LogFiber(level));
      break;
    case 2:
      parts_.emplace(Differential::dz_dtau, LogFiber(level));
      break;
    default:
      throw DomainError("LogValuedForm: degree must be 0, 1 or 2");
  }
}

const LogFiber& LogValuedForm::component(Differential d) const {
  const auto it = parts_.find(d);
  if (it == parts_.end()) throw DomainError("LogValuedForm: no such component in this degree");
  return it->second;
}

LogFiber& LogValuedForm::component(Differential d) {
  const auto it = parts_.find(d);
  if (it == parts_.end()) throw DomainError("LogValuedForm: no such component in this degree");
  return it->second;
}

std::vector<Differential> LogValuedForm::differentials() const {
  std::vector<Differential> out;
  for (const auto& kv : parts_) out.push_back(kv.first);
  return out;
}

double LogValuedForm::max_abs() const {
  double m = 0.0;
  for (const auto& kv : parts_) m = std::max(m, kv.second.max_abs());
  return m;
}

bool operator==(const LogValuedForm& a, const LogValuedForm& b) {
  return a.level_ == b.level_ && a.degree_ == b.degree_ && a.parts_ == b.parts_;
}

LogFiber dp_multiply(const LogFiber& a, const LogFiber& b) {
  LogFiber out(a.level() + b.level());
  for (const auto& [x, u] : a.terms()) {
    for (const auto& [y, v] : b.terms()) {
      const double c = binomial(x.i + y.i, x.i) * binomial(x.j + y.j, x.j);
      out.add({x.i + y.i, x.j + y.j}, c * u * v);
    }
  }
  return out;
}

LogFiber transition(const LogFiber& v) {
  if (v.level() == 0) throw DomainError("transition: level 0 has no predecessor");
  LogFiber out(v.level() - 1);
  for (const auto& [idx, c] : v.terms()) {
    if (out.in_range(idx)) out.add(idx, c);
  }
  return out;
}

LogValuedForm transition(const LogValuedForm& form) {
  LogValuedForm out(form.level() - 1, form.degree());
  for (Differential d : form.differentials()) out.component(d) = transition(form.component(d));
  return out;
}

Complex connection_eta(const ModuliPoint& tau) { return -eta_periods(tau).eta1; }

ConnectionData connection_data(const ModuliPoint& tau, EtaDerivative mode) {
  const Complex eta = connection_eta(tau);
  if (mode == EtaDerivative::q_series) {
    // E_2' = 2 pi i (E_2^2 - E_4) / 12 and eta = -(pi^2/3) E_2
    const Complex e2 = eisenstein_e2(tau);
    const Complex e4 = eisenstein_e4(tau);
    return {eta, -(pi * pi / 3.0) * two_pi_i * (e2 * e2 - e4) / 12.0};
  }
  DiffConfig cfg;
  cfg.step = 1e-5;
  cfg.richardson_levels = 2;
  const Complex deta = finite_diff([](Complex t) { return connection_eta(ModuliPoint(t)); }, tau.tau(), cfg);
  return {eta, deta};
}

namespace {

void add_if_in_range(LogFiber& f, DividedIndex idx, Complex v) {
  if (f.in_range(idx)) f.add(idx, v);
}

void rel_terms(LogFiber& dz, const LogFiber& v, Complex eta) {
  for (const auto& [idx, c] : v.terms()) {
    add_if_in_range(dz, {idx.i + 1, idx.j}, -static_cast<double>(idx.i + 1) * eta * c);
    add_if_in_range(dz, {idx.i, idx.j + 1}, static_cast<double>(idx.j + 1) * c);
  }
}

}  // namespace

LogValuedForm rel_connection(const LogFiber& v, const ModuliPoint& tau) {
  require_level(v.level(), "rel_connection");
  LogValuedForm out(v.level(), 1);
  rel_terms(out.component(Differential::dz), v, connection_eta(tau));
  return out;
}

LogValuedForm abs_connection(const LogFiber& v, const ConnectionData& data) {
  require_level(v.level(), "abs_connection");
  LogValuedForm out(v.level(), 1);
  rel_terms(out.component(Differential::dz), v, data.eta);

  const Complex c = 1.0 / two_pi_i;
  const Complex h = data.deta - data.eta * data.eta * c;
  LogFiber& dt = out.component(Differential::dtau);
  for (const auto& [idx, x] : v.terms()) {
    const int k = idx.i;
    const int j = idx.j;
    if (j != k) dt.add(idx, static_cast<double>(j - k) * data.eta * c * x);
    if (k >= 1) add_if_in_range(dt, {k - 1, j + 1}, static_cast<double>(j + 1) * c * x);
    if (j >= 1) add_if_in_range(dt, {k + 1, j - 1}, static_cast<double>(k + 1) * h * x);
  }
  return out;
}

LogValuedForm abs_connection(const LogFiber& v, const ModuliPoint& tau, EtaDerivative mode) {
  return abs_connection(v, connection_data(tau, mode));
}

Eigen::Matrix2cd gauss_manin_matrix(const ModuliPoint& tau, EtaDerivative mode) {
  const ConnectionData data = connection_data(tau, mode);
  const Complex c = 1.0 / two_pi_i;
  Eigen::Matrix2cd m;
  m(0, 0) = -data.eta * c;
  m(1, 0) = c;
  m(0, 1) = data.deta - data.eta * data.eta * c;
  m(1, 1) = data.eta * c;
  return m;
}

ConnectionMatrices connection_matrices(int n, const ConnectionData& data) {
  require_level(n, "connection_matrices");
  const auto basis = LogFiber::basis(n);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::map<DividedIndex, Eigen::Index> pos;
  for (Eigen::Index r = 0; r < dim; ++r) pos[basis[static_cast<std::size_t>(r)]] = r;

  ConnectionMatrices m{Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
  for (Eigen::Index col = 0; col < dim; ++col) {
    const LogValuedForm img = abs_connection(LogFiber::unit(n, basis[static_cast<std::size_t>(col)]), data);
    for (const auto& [idx, v] : img.component(Differential::dz).terms()) m.dz(pos.at(idx), col) = v;
    for (const auto& [idx, v] : img.component(Differential::dtau).terms()) m.dtau(pos.at(idx), col) = v;
  }
  return m;
}

double curvature_residual(int n, const ModuliPoint& tau, const DiffConfig& cfg, EtaDerivative mode) {
  require_level(n, "curvature_residual");
  cfg.validate();
  const ConnectionMatrices a = connection_matrices(n, connection_data(tau, mode));
  const Eigen::Index dim = a.dz.rows();

  auto flat_dz = [&](Complex t) {
    const ModuliPoint p(t);
    // A_z only depends on eta, so eta' is irrelevant here
    const Eigen::MatrixXcd az = connection_matrices(n, {connection_eta(p), Complex{}}).dz;
    return std::vector<Complex>(az.data(), az.data() + az.size());
  };
  const std::vector<Complex> d = finite_diff(flat_dz, tau.tau(), cfg);
  const Eigen::MatrixXcd d_az = Eigen::Map<const Eigen::MatrixXcd>(d.data(), dim, dim);

  const Eigen::MatrixXcd f = -d_az + a.dz * a.dtau - a.dtau * a.dz;
  return f.cwiseAbs().maxCoeff();
}

LogValuedForm ks_lift(const LogValuedForm& form) {
  if (form.degree() != 1) throw DomainError("ks_lift: input must be a 1-form");
  if (form.level() < 1) throw DomainError("ks_lift: input level must be >= 1");
  if (!form.component(Differential::dtau).is_zero()) {
    throw DomainError("ks_lift: input must have no dtau component");
  }
  const int n = form.level() - 1;
  LogValuedForm out(n, 1);
  const Complex c = 1.0 / two_pi_i;
  for (const auto& [idx, x] : form.component(Differential::dz).terms()) {
    if (idx.j != 0) {
      if (x == Complex{}) continue;
      throw DomainError("ks_lift: dz component must be supported on indices (k, 0)");
    }
    if (idx.i <= n) out.component(Differential::dz).add(idx, x);
    if (idx.i >= 1) out.component(Differential::dtau).add({idx.i - 1, 0}, x * c);
  }
  return out;
}

}  // namespace ellpolylog
