#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ellpolylog/cli.hpp"
#include "ellpolylog/eisenstein.hpp"
#include "ellpolylog/errors.hpp"
#include "ellpolylog/kronecker.hpp"
#include "ellpolylog/logsheaf.hpp"
#include "ellpolylog/polylog.hpp"
#include "ellpolylog/weierstrass.hpp"

namespace ellpolylog {

namespace {

struct CheckSpec {
  const char* name;
  Suite suite;
  const char* anchor;
  double tolerance;
};

const std::vector<CheckSpec>& check_specs() {
  static const std::vector<CheckSpec> specs = {
      {"legendre", Suite::weierstrass, "Legendre relation", 1e-8},
      {"eta1_at_i", Suite::weierstrass, "quasi-period eta1(i) = pi", 1e-8},
      {"wp_ode", Suite::weierstrass, "wp'^2 = 4 wp^3 - g2 wp - g3", 1e-7},
      {"g2_lattice", Suite::weierstrass, "g2 = 60 G4 by lattice summation", 1e-9},
      {"heat", Suite::heat, "mixed heat equation for the Kronecker function", 1e-6},
      {"s_heat", Suite::heat, "heat equation for the coefficients s_k", 1e-5},
      {"curvature", Suite::curvature, "integrability of the absolute connection", 1e-4},
      {"closedness", Suite::closedness, "absolute Kronecker section is closed", 1e-4},
      {"distribution", Suite::distribution, "distribution relation of the Kronecker section", 1e-6},
      {"pole_removal", Suite::distribution, "D-variant removes the pole along w = 0", 10.0},
      {"ks_residue_origin", Suite::katosiegel, "divisor of theta_D at the origin", 1e-7},
      {"ks_residue_torsion", Suite::katosiegel, "divisor of theta_D at D-torsion", 1e-7},
      {"ks_norm", Suite::katosiegel, "norm compatibility of theta_D", 1e-7},
      {"l_form_level0", Suite::katosiegel, "l_0 is the logarithmic derivative of theta_D", 1e-8},
      {"s_substitution", Suite::katosiegel, "s_k scaling under w -> w/D", 1e-9},
      {"ks_zeta", Suite::katosiegel, "dlog theta_D = D^2 zeta(z) - D zeta(Dz)", 1e-8},
      {"s_doubling", Suite::katosiegel, "s_k stable under doubling the contour samples", 1e-9},
      {"naive_vs_lipschitz", Suite::eisenstein, "level-N Eisenstein series, two evaluators", 1e-5},
      {"eisenstein_parity", Suite::eisenstein, "F_(-a,-b) = (-1)^k F_(a,b)", 1e-9},
      {"eisenstein_translation", Suite::eisenstein, "F_(a,b)(tau + 1) = F_(a,a+b)(tau)", 1e-8},
      {"eisenstein_k2", Suite::eisenstein, "weight 2 under Eisenstein summation", 1e-4},
      {"specialization", Suite::specialization, "torsion specialization is F_tilde", 1e-6},
  };
  return specs;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class PointStream {
 public:
  PointStream(std::uint64_t seed, const std::string& check) : rng_(seed ^ fnv1a(check)) {}

  // 53 random bits, independent of the standard library's distributions
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  ModuliPoint tau() { return ModuliPoint(Complex(uniform(-0.5, 0.5), uniform(0.8, 2.0))); }

  // z in the sampling box, at least `margin` away from E[2] and E[3]
  Complex z(const ModuliPoint& t, double margin = 0.02) {
    for (;;) {
      const Complex c(uniform(0.1, 0.4), uniform(0.05, 0.3));
      if (torsion_gap(c, t, 2) >= margin && torsion_gap(c, t, 3) >= margin) return c;
    }
  }

  static double torsion_gap(Complex z, const ModuliPoint& t, int D) {
    double best = lattice_distance(z, t);
    for (int c = 0; c < D; ++c) {
      for (int d = 0; d < D; ++d) {
        const Complex p = (static_cast<double>(c) * t.tau() + static_cast<double>(d)) / static_cast<double>(D);
        best = std::min(best, lattice_distance(z - p, t));
      }
    }
    return best;
  }

 private:
  std::mt19937_64 rng_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(Complex v) { return fmt(v.real()) + (v.imag() < 0 ? "" : "+") + fmt(v.imag()) + "i"; }

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Residuals of independent cases, evaluated on up to `parallelism` threads
// and returned in case order.
std::vector<double> evaluate_cases(int count, int parallelism, const std::function<double(int)>& fn) {
  const auto values = parallel_map(count, parallelism, [&](int i) { return Complex(fn(i), 0.0); });
  std::vector<double> out;
  out.reserve(values.size());
  for (const Complex& v : values) out.push_back(v.real());
  return out;
}

struct Result {
  std::vector<double> residuals;
  std::vector<CheckRow> rows;
};

using CheckFn = std::function<Result(const RunConfig&, PointStream&)>;

Result from_residuals(std::vector<double> r) { return {std::move(r), {}}; }

Result check_legendre(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 20; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(20, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i)];
    const Complex eta1 = eta_periods(t).eta1;
    const Complex eta2 = zeta_fn(z + t.tau(), t) - zeta_fn(z, t);
    return std::abs(eta1 * t.tau() - eta2 - two_pi_i);
  }));
}

Result check_eta1_at_i(const RunConfig& cfg, PointStream&) {
  const ModuliPoint i(Complex(0.0, 1.0));
  Result r;
  const Complex lattice = lattice_eisenstein_g(2, i, cfg.truncation, cfg.parallelism);
  const Complex series = eta_periods(i).eta1;
  r.residuals = {std::abs(lattice - pi), std::abs(series - pi)};
  r.rows = {{"lattice sum", r.residuals[0], false}, {"q-series", r.residuals[1], false}};
  return r;
}

Result check_wp_ode(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 50; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(50, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i)];
    const auto g = g_invariants(t);
    const auto p = wp(z, t);
    const Complex rhs = 4.0 * p.wp * p.wp * p.wp - g.g2 * p.wp - g.g3;
    return std::abs(p.wp_prime * p.wp_prime - rhs) / std::max(1.0, std::abs(rhs));
  }));
}

Result check_g2_lattice(const RunConfig& cfg, PointStream& ps) {
  std::vector<double> out;
  for (int i = 0; i < 5; ++i) {
    const ModuliPoint t = ps.tau();
    const Complex lattice = 60.0 * lattice_eisenstein_g(4, t, cfg.truncation, cfg.parallelism);
    out.push_back(rel(lattice, g_invariants(t).g2));
  }
  return from_residuals(out);
}

Result check_heat(const RunConfig& cfg, PointStream& ps) {
  std::vector<KroneckerPoint> pts;
  auto short_z = [&](const ModuliPoint& t) {
    for (;;) {
      const Complex z = ps.z(t);
      if (std::abs(z) <= 0.4) return z;
    }
  };
  for (int i = 0; i < 50; ++i) {
    const ModuliPoint t = ps.tau();
    const Complex z = short_z(t);
    const Complex w = short_z(t);
    pts.push_back({z, w, t});
  }
  return from_residuals(evaluate_cases(50, cfg.parallelism, [&](int i) {
    return heat_residual(pts[static_cast<std::size_t>(i)], cfg.diff);
  }));
}

Result check_s_heat(const RunConfig& cfg, PointStream& ps) {
  constexpr int order = 4;
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 10; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(20, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 2)];
    const int D = 2 + i % 2;
    const auto d_tau = finite_diff(
        [&](Complex u) { return s_coeffs(z, ModuliPoint(u), D, order, cfg.cauchy).coeffs; }, t.tau(), cfg.diff);
    const auto d_z =
        finite_diff([&](Complex x) { return s_coeffs(x, t, D, order, cfg.cauchy).coeffs; }, z, cfg.diff);
    double worst = 0.0;
    for (int k = 0; k < order; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      worst = std::max(worst, std::abs(d_tau[ku] - static_cast<double>(k + 1) / two_pi_i * d_z[ku + 1]));
    }
    return worst;
  }));
}

Result check_curvature(const RunConfig& cfg, PointStream& ps) {
  std::vector<ModuliPoint> taus;
  for (int i = 0; i < 10; ++i) taus.push_back(ps.tau());
  return from_residuals(evaluate_cases(50, cfg.parallelism, [&](int i) {
    return curvature_residual(i % 5, taus[static_cast<std::size_t>(i / 5)], cfg.diff);
  }));
}

Result check_closedness(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 10; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  // point-major, then D in {2,3}, then n = 0..4
  return from_residuals(evaluate_cases(100, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 10)];
    const int D = 2 + (i / 5) % 2;
    return closedness_residual(z, t, D, i % 5, cfg.diff);
  }));
}

Result check_distribution(const RunConfig& cfg, PointStream& ps) {
  std::vector<KroneckerPoint> pts;
  for (int i = 0; i < 50; ++i) {
    const ModuliPoint t = ps.tau();
    const Complex z = ps.z(t);
    const Complex w = ps.z(t);
    pts.push_back({z, w, t});
  }
  return from_residuals(evaluate_cases(100, cfg.parallelism, [&](int i) {
    return distribution_residual(pts[static_cast<std::size_t>(i / 2)], 2 + i % 2);
  }));
}

Result check_pole_removal(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 5; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(10, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 2)];
    return pole_removal_ratio(z, t, 2 + i % 2);
  }));
}

constexpr int residue_samples = 32;

double residue_radius(const ModuliPoint& t, int D) { return 0.25 * shortest_lattice_vector(t) / D; }

Result check_ks_residue_origin(const RunConfig& cfg, PointStream& ps) {
  std::vector<ModuliPoint> taus;
  for (int i = 0; i < 5; ++i) taus.push_back(ps.tau());
  return from_residuals(evaluate_cases(10, cfg.parallelism, [&](int i) {
    const ModuliPoint& t = taus[static_cast<std::size_t>(i / 2)];
    const int D = 2 + i % 2;
    const Complex want = two_pi_i * static_cast<double>(D * D - 1);
    const Complex got = contour_integral([&](Complex z) { return dlog_kato_siegel(z, t, D); }, 0.0,
                                         residue_radius(t, D), residue_samples);
    return std::abs(got - want) / std::abs(want);
  }));
}

Result check_ks_residue_torsion(const RunConfig& cfg, PointStream& ps) {
  struct Case {
    ModuliPoint tau;
    int D;
    Complex point;
  };
  std::vector<Case> cases;
  for (int i = 0; i < 5; ++i) {
    const ModuliPoint t = ps.tau();
    for (int D : {2, 3}) {
      for (int c = 0; c < D; ++c) {
        for (int d = 0; d < D; ++d) {
          if (c == 0 && d == 0) continue;
          cases.push_back({t, D, (static_cast<double>(c) * t.tau() + static_cast<double>(d)) / static_cast<double>(D)});
        }
      }
    }
  }
  return from_residuals(evaluate_cases(static_cast<int>(cases.size()), cfg.parallelism, [&](int i) {
    const Case& c = cases[static_cast<std::size_t>(i)];
    const Complex got = contour_integral([&](Complex z) { return dlog_kato_siegel(z, c.tau, c.D); }, c.point,
                                         residue_radius(c.tau, c.D), residue_samples);
    return std::abs(got + two_pi_i) / std::abs(two_pi_i);
  }));
}

Result check_ks_norm(const RunConfig& cfg, PointStream& ps) {
  struct Case {
    ModuliPoint tau;
    Complex z;
    int M;
    int D;
  };
  std::vector<Case> cases;
  for (auto [M, D] : {std::pair{2, 3}, std::pair{3, 2}}) {
    for (int i = 0; i < 5; ++i) {
      const ModuliPoint t = ps.tau();
      for (;;) {
        const Complex z = ps.z(t);
        bool clear = true;
        for (int c = 0; c < M && clear; ++c) {
          for (int d = 0; d < M && clear; ++d) {
            const Complex u = (z + static_cast<double>(c) * t.tau() + static_cast<double>(d)) / static_cast<double>(M);
            clear = PointStream::torsion_gap(u, t, D) >= 0.02;
          }
        }
        if (clear) {
          cases.push_back({t, z, M, D});
          break;
        }
      }
    }
  }
  return from_residuals(evaluate_cases(static_cast<int>(cases.size()), cfg.parallelism, [&](int i) {
    const Case& c = cases[static_cast<std::size_t>(i)];
    ComplexAccumulator acc;
    for (int a = 0; a < c.M; ++a) {
      for (int b = 0; b < c.M; ++b) {
        const Complex u =
            (c.z + static_cast<double>(a) * c.tau.tau() + static_cast<double>(b)) / static_cast<double>(c.M);
        acc.add(dlog_kato_siegel(u, c.tau, c.D));
      }
    }
    return rel(acc.value() / static_cast<double>(c.M), dlog_kato_siegel(c.z, c.tau, c.D));
  }));
}

Result check_l_form_level0(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 10; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(20, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 2)];
    const int D = 2 + i % 2;
    const double Dd = D;
    const Complex want = Dd * Dd * zeta_fn(z, t) - Dd * zeta_fn(Dd * z, t);
    return rel(l_form(z, t, D, 0).component(Differential::dz).coeff({0, 0}), want);
  }));
}

Result check_s_substitution(const RunConfig& cfg, PointStream& ps) {
  constexpr int order = 6;
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 5; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(10, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 2)];
    const int D = 2 + i % 2;
    const double Dd = D;
    const CauchyConfig contour = cfg.cauchy.value_or(default_s_contour(t));
    // Taylor coefficients of J(x, w) - 1/w
    auto regular = [&](Complex x) {
      return cauchy_coeffs([&](Complex w) { return jacobi_J({x, w, t}) - 1.0 / w; }, order, contour);
    };
    const auto jz = regular(z);
    const auto jDz = regular(Dd * z);
    const auto s = s_coeffs(z, t, D, order, cfg.cauchy).coeffs;
    double worst = 0.0;
    for (int k = 0; k <= order; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      worst = std::max(worst, rel(s[ku], Dd * Dd * jz[ku] - std::pow(Dd, 1 - k) * jDz[ku]));
    }
    return worst;
  }));
}

Result check_ks_zeta(const RunConfig& cfg, PointStream& ps) {
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 50; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(50, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i)];
    const int D = 2 + i % 2;
    const double Dd = D;
    return rel(dlog_kato_siegel(z, t, D), Dd * Dd * zeta_fn(z, t) - Dd * zeta_fn(Dd * z, t));
  }));
}

Result check_s_doubling(const RunConfig& cfg, PointStream& ps) {
  constexpr int order = 8;
  std::vector<std::pair<ModuliPoint, Complex>> pts;
  for (int i = 0; i < 5; ++i) {
    const ModuliPoint t = ps.tau();
    pts.emplace_back(t, ps.z(t));
  }
  return from_residuals(evaluate_cases(10, cfg.parallelism, [&](int i) {
    const auto& [t, z] = pts[static_cast<std::size_t>(i / 2)];
    const int D = 2 + i % 2;
    CauchyConfig base = cfg.cauchy.value_or(default_s_contour(t));
    CauchyConfig doubled = base;
    doubled.samples *= 2;
    const auto a = s_coeffs(z, t, D, order, base).coeffs;
    const auto b = s_coeffs(z, t, D, order, doubled).coeffs;
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, rel(a[k], b[k]));
    return worst;
  }));
}

EisensteinQuery make_query(int a, int b, int N, int k, const ModuliPoint& t, EisensteinMode mode,
                           const LatticeTruncation& trunc) {
  EisensteinQuery q;
  q.a = a;
  q.b = b;
  q.N = N;
  q.k = k;
  q.tau = t;
  q.mode = mode;
  q.trunc = trunc;
  return q;
}

Result check_naive_vs_lipschitz(const RunConfig& cfg, PointStream& ps) {
  struct Case {
    int a, b, N, k;
    ModuliPoint tau;
  };
  std::vector<Case> cases;
  const int labels[][3] = {{0, 1, 4}, {1, 2, 5}};
  for (int i = 0; i < 2; ++i) {
    const ModuliPoint t = ps.tau();
    for (const auto& l : labels) {
      for (int k = 3; k <= 5; ++k) cases.push_back({l[0], l[1], l[2], k, t});
    }
  }
  Result r;
  r.residuals = evaluate_cases(static_cast<int>(cases.size()), cfg.parallelism, [&](int i) {
    const Case& c = cases[static_cast<std::size_t>(i)];
    const Complex lip = F(make_query(c.a, c.b, c.N, c.k, c.tau, EisensteinMode::lipschitz, cfg.truncation));
    const Complex naive = F(make_query(c.a, c.b, c.N, c.k, c.tau, EisensteinMode::naive, cfg.truncation));
    return std::abs(naive - lip) / std::abs(lip);
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    r.rows.push_back({"k=" + std::to_string(c.k) + " N=" + std::to_string(c.N) + " a=" + std::to_string(c.a) +
                          " b=" + std::to_string(c.b) + " tau=" + fmt(c.tau.tau()),
                      r.residuals[i], false});
  }
  return r;
}

Result check_eisenstein_parity(const RunConfig& cfg, PointStream& ps) {
  std::vector<ModuliPoint> taus;
  for (int i = 0; i < 3; ++i) taus.push_back(ps.tau());
  return from_residuals(evaluate_cases(24, cfg.parallelism, [&](int i) {
    const ModuliPoint& t = taus[static_cast<std::size_t>(i / 8)];
    const int k = 1 + i % 8;
    const Complex v = F(make_query(1, 2, 5, k, t, EisensteinMode::lipschitz, cfg.truncation));
    const Complex vm = F(make_query(-1, -2, 5, k, t, EisensteinMode::lipschitz, cfg.truncation));
    return rel(vm, ((k % 2 == 0) ? 1.0 : -1.0) * v);
  }));
}

Result check_eisenstein_translation(const RunConfig& cfg, PointStream& ps) {
  std::vector<ModuliPoint> taus;
  for (int i = 0; i < 3; ++i) taus.push_back(ps.tau());
  return from_residuals(evaluate_cases(9, cfg.parallelism, [&](int i) {
    const ModuliPoint& t = taus[static_cast<std::size_t>(i / 3)];
    const int k = 3 + i % 3;
    const ModuliPoint shifted(t.tau() + 1.0);
    return rel(F(make_query(1, 2, 5, k, shifted, EisensteinMode::lipschitz, cfg.truncation)),
               F(make_query(1, 3, 5, k, t, EisensteinMode::lipschitz, cfg.truncation)));
  }));
}

Result check_eisenstein_k2(const RunConfig& cfg, PointStream& ps) {
  const int labels[][3] = {{2, 1, 3}, {1, 0, 4}};
  const ModuliPoint taus[] = {ps.tau(), ps.tau()};
  LatticeTruncation trunc = cfg.truncation;
  trunc.ordering = LatticeOrdering::eisenstein;
  return from_residuals(evaluate_cases(4, cfg.parallelism, [&](int i) {
    const ModuliPoint& t = taus[i / 2];
    const auto& l = labels[i % 2];
    const Complex lip = F(make_query(l[0], l[1], l[2], 2, t, EisensteinMode::lipschitz, cfg.truncation));
    return rel(eisenstein_sum_k2(l[0], l[1], l[2], t, trunc), lip);
  }));
}

Result check_specialization(const RunConfig& cfg, PointStream& ps) {
  struct Case {
    int k, N, D, a, b;
    ModuliPoint tau;
  };
  std::vector<Case> cases;
  for (int k = 2; k <= 4; ++k) {
    for (int N = 3; N <= 5; ++N) {
      for (int D = 2; D <= 3; ++D) {
        for (int i = 0; i < 5; ++i) {
          int a = 0, b = 0;
          while (a == 0 && b == 0) {
            a = ps.integer(0, N - 1);
            b = ps.integer(0, N - 1);
          }
          cases.push_back({k, N, D, a, b, ps.tau()});
        }
      }
    }
  }
  Result r;
  r.residuals = evaluate_cases(static_cast<int>(cases.size()), cfg.parallelism, [&](int i) {
    const Case& c = cases[static_cast<std::size_t>(i)];
    const Complex spec = specialize_eisenstein({c.a, c.b, c.N, c.D}, c.tau, c.k, cfg.truncation);
    const Complex want = F_tilde(make_query(c.a, c.b, c.N, c.k + 1, c.tau, EisensteinMode::lipschitz, cfg.truncation),
                                 c.D, DegenerateLabel::extend);
    // 2-torsion labels at odd weight give exactly 0
    return rel(spec, want);
  });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    r.rows.push_back({"k=" + std::to_string(c.k) + " N=" + std::to_string(c.N) + " D=" + std::to_string(c.D) +
                          " a=" + std::to_string(c.a) + " b=" + std::to_string(c.b) + " tau=" + fmt(c.tau.tau()),
                      r.residuals[i], false});
  }
  return r;
}

const std::map<std::string, CheckFn>& check_functions() {
  static const std::map<std::string, CheckFn> fns = {
      {"legendre", check_legendre},
      {"eta1_at_i", check_eta1_at_i},
      {"wp_ode", check_wp_ode},
      {"g2_lattice", check_g2_lattice},
      {"heat", check_heat},
      {"s_heat", check_s_heat},
      {"curvature", check_curvature},
      {"closedness", check_closedness},
      {"distribution", check_distribution},
      {"pole_removal", check_pole_removal},
      {"ks_residue_origin", check_ks_residue_origin},
      {"ks_residue_torsion", check_ks_residue_torsion},
      {"ks_norm", check_ks_norm},
      {"l_form_level0", check_l_form_level0},
      {"s_substitution", check_s_substitution},
      {"ks_zeta", check_ks_zeta},
      {"s_doubling", check_s_doubling},
      {"naive_vs_lipschitz", check_naive_vs_lipschitz},
      {"eisenstein_parity", check_eisenstein_parity},
      {"eisenstein_translation", check_eisenstein_translation},
      {"eisenstein_k2", check_eisenstein_k2},
      {"specialization", check_specialization},
  };
  return fns;
}

CheckRecord run_check(const CheckSpec& spec, const RunConfig& cfg) {
  CheckRecord rec;
  rec.name = spec.name;
  rec.paper_anchor = spec.anchor;
  const auto it = cfg.tolerance_overrides.find(spec.name);
  rec.tolerance = it == cfg.tolerance_overrides.end() ? spec.tolerance : it->second;

  const auto start = std::chrono::steady_clock::now();
  try {
    PointStream ps(cfg.seed, spec.name);
    Result r = check_functions().at(spec.name)(cfg, ps);
    rec.points_tested = static_cast<int>(r.residuals.size());
    bool ok = !r.residuals.empty();
    for (double v : r.residuals) {
      if (!std::isfinite(v)) ok = false;
      rec.max_residual = std::max(rec.max_residual, v);
    }
    rec.pass = ok && rec.max_residual <= rec.tolerance;
    for (auto& row : r.rows) row.pass = std::isfinite(row.residual) && row.residual <= rec.tolerance;
    rec.rows = std::move(r.rows);
  } catch (const Error& e) {
    rec.pass = false;
    rec.error = e.what();
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : check_specs()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

VerificationReport cmd_verify(Suite suite, const RunConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  report.suite = suite_name(suite);
  report.seed = cfg.seed;
  report.pass = true;
  for (const auto& spec : check_specs()) {
    if (suite != Suite::all && spec.suite != suite) continue;
    report.checks.push_back(run_check(spec, cfg));
    report.pass = report.pass && report.checks.back().pass;
  }
  return report;
}

}  // namespace ellpolylog
