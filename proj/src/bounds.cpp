#include "contact_bounds/bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "contact_bounds/error.hpp"
#include "contact_bounds/quadrature.hpp"

namespace cbounds {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameters, what);
}

void require_positive(double v, const char* what) {
  require(std::isfinite(v) && v > 0.0, std::string(what) + " must be positive");
}

// Tangent direction of the constraint at F: unit cof F.
Mat3 constraint_normal(const Mat3& F) {
  Mat3 n = cofactor(F);
  return n * (1.0 / std::sqrt(ddot(n, n)));
}

Mat3 project_tangent(const Mat3& M, const Mat3& n) { return M - n * ddot(M, n); }

Mat3 unit_matrix(int k) {
  Mat3 E;
  E(k / 3, k % 3) = 1.0;
  return E;
}

// Most negative constraint-tangent direction of the pointwise second variation.
Mat3 softest_direction(const BodySpec& body, const Vec3& X) {
  const Mat3 F = cartesian_gradient(body.map, X);
  const double p = pressure_at(body, X);
  auto q = [&](const Mat3& G) { return hessian_quadratic_form(body.material, F, p, G); };

  Eigen::Matrix<double, 9, 9> H;
  double diag[9];
  for (int a = 0; a < 9; ++a) diag[a] = q(unit_matrix(a));
  for (int a = 0; a < 9; ++a) {
    H(a, a) = diag[a];
    for (int b = a + 1; b < 9; ++b) {
      H(a, b) = H(b, a) = 0.5 * (q(unit_matrix(a) + unit_matrix(b)) - diag[a] - diag[b]);
    }
  }
  const Mat3 n = constraint_normal(F);
  Eigen::Matrix<double, 9, 1> nv;
  for (int k = 0; k < 9; ++k) nv(k) = n(k / 3, k % 3);
  const Eigen::Matrix<double, 9, 9> P = Eigen::Matrix<double, 9, 9>::Identity() - nv * nv.transpose();
  const double lift = 1e3 * (H.norm() + 1.0);
  const Eigen::Matrix<double, 9, 9> Ht = P * H * P + lift * nv * nv.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> eig(Ht);
  Mat3 G;
  for (int k = 0; k < 9; ++k) G(k / 3, k % 3) = eig.eigenvectors()(k, 0);
  return G;
}

struct Probe {
  Vec3 center;
  Vec3 half_width;
  Mat3 M;
};

double bump(const Probe& pr, const Vec3& X) {
  double v = 1.0;
  for (int j = 0; j < 3; ++j) {
    const double s = (X[j] - pr.center[j]) / pr.half_width[j];
    if (std::abs(s) >= 1.0) return 0.0;
    v *= (1.0 - s * s) * (1.0 - s * s);
  }
  return v;
}

// Rayleigh quotient int phi^2 Q(T) / int phi^2 |T|^2 over the probe support clipped to the body.
double probe_value(const BodySpec& body, const Probe& pr, const QuadratureRule& rule) {
  const Box3& d = body.domain;
  const Box3 support{std::max(d.x_lo, pr.center[0] - pr.half_width[0]),
                     std::min(d.x_hi, pr.center[0] + pr.half_width[0]),
                     std::max(d.y_lo, pr.center[1] - pr.half_width[1]),
                     std::min(d.y_hi, pr.center[1] + pr.half_width[1]),
                     std::max(d.z_lo, pr.center[2] - pr.half_width[2]),
                     std::min(d.z_hi, pr.center[2] + pr.half_width[2])};
  const double den = integrate_volume(
      [&](const Vec3& X) {
        const Mat3 F = cartesian_gradient(body.map, X);
        const Mat3 T = project_tangent(pr.M, constraint_normal(F));
        const double w = bump(pr, X) * bump(pr, X);
        return w * ddot(T, T);
      },
      support, rule);
  const double num = integrate_volume(
      [&](const Vec3& X) {
        const Mat3 F = cartesian_gradient(body.map, X);
        const Mat3 T = project_tangent(pr.M, constraint_normal(F));
        const double w = bump(pr, X) * bump(pr, X);
        return w * hessian_quadratic_form(body.material, F, pressure_at(body, X), T);
      },
      support, rule);
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

std::vector<Probe> make_probes(const BodySpec& body, int count, bool primal, std::mt19937_64& rng) {
  const Box3& d = body.domain;
  const Vec3 len{d.x_hi - d.x_lo, d.y_hi - d.y_lo, d.z_hi - d.z_lo};
  const Vec3 hw{0.04 * len[0], 0.25 * len[1], 0.25 * len[2]};
  // Primal probes vanish on the X faces (Dirichlet and contact planes).
  const double x0 = primal ? d.x_lo + hw[0] : d.x_lo;
  const double x1 = primal ? d.x_hi - hw[0] : d.x_hi;
  const Vec3 mid{0.5 * (d.x_lo + d.x_hi), 0.5 * (d.y_lo + d.y_hi), 0.5 * (d.z_lo + d.z_hi)};

  std::vector<Probe> probes;
  constexpr int kStructured = 9;
  for (int k = 0; k < kStructured; ++k) {
    Vec3 c = mid;
    c[0] = x0 + (x1 - x0) * k / (kStructured - 1);
    probes.push_back({c, hw, softest_direction(body, c)});
  }
  std::uniform_real_distribution<double> u(0.0, 1.0), m(-1.0, 1.0);
  while (static_cast<int>(probes.size()) < count) {
    Probe pr;
    pr.center = {x0 + (x1 - x0) * u(rng), d.y_lo + hw[1] + (len[1] - 2.0 * hw[1]) * u(rng),
                 d.z_lo + hw[2] + (len[2] - 2.0 * hw[2]) * u(rng)};
    pr.half_width = hw;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) pr.M(i, j) = m(rng);
    }
    probes.push_back(pr);
  }
  return probes;
}

double lambda_max(const BodySpec& body) { return max_principal_stretch(body.map, body.domain); }

bool is_triaxial_example(Example e) { return e != Example::Bending; }

double open_value(Example e, const ExampleParams& p) { return e == Example::Cohesive ? p.g : 0.0; }

// Normal stretch of the body at the contact plane: Cauchy traction is C lambda_n^2 - p.
double interface_normal_stretch(const BodySpec& body, double Xc) {
  return deformation_gradient(body.map, {Xc, 0.0, 0.0})(0, 0);
}

}  // namespace

LoadInterval closed_interval(double lo, double hi) { return {lo, hi, Regime::Closed, !(lo < hi)}; }

LoadInterval open_singleton(double tau) { return {tau, tau, Regime::Open, false}; }

LoadInterval scaled(const LoadInterval& in, double k) {
  require_positive(k, "scale factor");
  LoadInterval out = in;
  out.tau_lo *= k;
  out.tau_hi *= k;
  return out;
}

CriteriaResult criteria_check(const BodySpec& body, int probe_count, std::uint64_t seed) {
  require(probe_count >= kMinProbeCount,
          "probe_count must be >= " + std::to_string(kMinProbeCount));
  validate(body);
  std::mt19937_64 rng(seed);
  const QuadratureRule rule(6);
  const double tol = kPositivityTolerance * shear_constant(body.material);

  CriteriaResult res;
  double min_primal = std::numeric_limits<double>::infinity();
  for (const auto& pr : make_probes(body, probe_count, true, rng)) {
    min_primal = std::min(min_primal, probe_value(body, pr, rule));
  }
  double min_comp = std::numeric_limits<double>::infinity();
  for (const auto& pr : make_probes(body, probe_count, false, rng)) {
    min_comp = std::min(min_comp, probe_value(body, pr, rule));
  }
  res.primal_ok = min_primal > tol;
  res.complementary_ok = min_comp > tol;
  res.min_quadratic_value = std::min(min_primal, min_comp);
  const double w = shear_constant(body.material) / lambda_max(body);
  res.pressure_window = {-w, w};
  return res;
}

std::pair<double, double> pressure_window(const BodySpec& body) {
  if (std::holds_alternative<Homogeneous>(body.map)) {
    throw Error(ErrorCode::FamilyMismatch, "pressure window needs a triaxial or bending body");
  }
  const double w = shear_constant(body.material) / lambda_max(body);
  return {-w, w};
}

std::pair<double, double> probed_window(const BodySpec& body, double lo, double hi, double step,
                                        int probe_count, std::uint64_t seed) {
  require(lo < 0.0 && hi > 0.0 && step > 0.0, "probe sweep must straddle zero with positive step");
  auto ok = [&](double p) {
    BodySpec b = body;
    b.pressure = ConstantPressure{p};
    const auto r = criteria_check(b, probe_count, seed);
    return r.primal_ok && r.complementary_ok;
  };
  if (!ok(0.0)) throw Error(ErrorCode::InfeasibleProblem, "criteria fail at zero pressure");
  double upper = 0.0, lower = 0.0;
  for (int k = 1; k * step <= hi + 1e-12 && ok(k * step); ++k) upper = k * step;
  for (int k = 1; -k * step >= lo - 1e-12 && ok(-k * step); ++k) lower = -k * step;
  return {lower, upper};
}

LoadInterval load_interval_compression(double C1, double C2, double a1, double a2,
                                       bool contact_closed) {
  require_positive(C1, "C1");
  require_positive(C2, "C2");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  if (!contact_closed) return open_singleton(0.0);
  const double m = std::min(C1 * (std::sqrt(a1) - a1 * a1), C2 * (std::sqrt(a2) - a2 * a2));
  return closed_interval(-m, 0.0);
}

LoadInterval load_interval_cohesive(double C1, double C2, double a1, double a2, double g,
                                    bool contact_closed) {
  require_positive(C1, "C1");
  require_positive(C2, "C2");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require_positive(g, "g");
  if (!contact_closed) return open_singleton(g);
  const double lo = std::min(C1 * (std::sqrt(a1) - a1 * a1), C2 * (std::sqrt(a2) - a2 * a2));
  const double hi = std::min({g, C1 * (std::sqrt(a1) + a1 * a1), C2 * (std::sqrt(a2) + a2 * a2)});
  return closed_interval(-lo, hi);
}

LoadInterval load_interval_bending(double C1, double C2, double A, double a1, double a2, double b1,
                                   double b2, bool contact_closed) {
  require_positive(C1, "C1");
  require_positive(C2, "C2");
  require_positive(A, "A");
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require(std::isfinite(b1) && std::isfinite(b2), "b1 and b2 must be finite");
  require(b1 > kMinRadius * kMinRadius, "r0 = sqrt(b1) must exceed the minimum radius");
  const double r0 = std::sqrt(b1), r1 = std::sqrt(a1 + b1);
  require(2.0 * a2 + b2 > kMinRadius * kMinRadius, "r2 must exceed the minimum radius");
  const double r2 = std::sqrt(2.0 * a2 + b2);
  if (!contact_closed) return open_singleton(0.0);
  const double l1 = std::max({a1 / r0, A * r1 / std::sqrt(a1), 1.0 / (A * std::sqrt(a1))});
  const double l2 = std::max({a2 / r1, A * r2 / std::sqrt(a2), 1.0 / (A * std::sqrt(a2))});
  const double m = std::min(C1 / l1 - C1 * a1 * a1 / (r1 * r1), C2 / l2 - C2 * a2 * a2 / (r1 * r1));
  return closed_interval(-m, 0.0);
}

const char* to_string(Example e) {
  switch (e) {
    case Example::Compression: return "compression";
    case Example::Cohesive: return "cohesive";
    case Example::Bending: return "bending";
  }
  return "?";
}

Example parse_example(std::string_view name) {
  if (name == "compression") return Example::Compression;
  if (name == "cohesive") return Example::Cohesive;
  if (name == "bending") return Example::Bending;
  throw Error(ErrorCode::InvalidParameters, "unknown example '" + std::string(name) + "'");
}

void validate(Example example, const ExampleParams& p) {
  require_positive(p.C1, "C1");
  require_positive(p.C2, "C2");
  require_positive(p.a1, "a1");
  require_positive(p.a2, "a2");
  if (example == Example::Cohesive) require_positive(p.g, "g");
  if (example == Example::Bending) {
    require_positive(p.A, "A");
    require(std::isfinite(p.b1) && std::isfinite(p.b2), "b1 and b2 must be finite");
    require(p.b1 > kMinRadius * kMinRadius, "r0 = sqrt(b1) must exceed the minimum radius");
    const double r1 = std::sqrt(p.a1 + p.b1);
    require(p.a2 + p.b2 > 0.0 && std::abs(std::sqrt(p.a2 + p.b2) - r1) <= 1e-9 * r1,
            "bodies must meet at the interface radius: a2 + b2 = a1 + b1");
  }
}

LoadInterval closed_form_interval(Example example, const ExampleParams& p) {
  switch (example) {
    case Example::Compression:
      return load_interval_compression(p.C1, p.C2, p.a1, p.a2, p.contact_closed);
    case Example::Cohesive:
      return load_interval_cohesive(p.C1, p.C2, p.a1, p.a2, p.g, p.contact_closed);
    case Example::Bending:
      return load_interval_bending(p.C1, p.C2, p.A, p.a1, p.a2, p.b1, p.b2, p.contact_closed);
  }
  throw Error(ErrorCode::InvalidParameters, "unknown example");
}

std::pair<BodySpec, BodySpec> example_bodies(Example example, const ExampleParams& p) {
  validate(example, p);
  BodySpec b1{kBody1Domain, NeoHookeanIncompressible{p.C1}, TriaxialStretch{}, ConstantPressure{}};
  BodySpec b2{kBody2Domain, NeoHookeanIncompressible{p.C2}, TriaxialStretch{}, ConstantPressure{}};
  const double Xc = kBody1Domain.x_hi;
  if (is_triaxial_example(example)) {
    b1.map = TriaxialStretch{p.a1, 0.0};
    b2.map = TriaxialStretch{p.a2, (p.a1 - p.a2) * Xc};
  } else {
    b1.map = StretchBend{p.A, p.a1, p.b1};
    b2.map = StretchBend{p.A, p.a2, p.b2};
  }
  validate(b1);
  validate(b2);
  return {b1, b2};
}

std::pair<double, double> interface_pressures(Example example, const ExampleParams& p, double tau) {
  const auto [b1, b2] = example_bodies(example, p);
  if (is_triaxial_example(example)) {
    return {p.C1 * p.a1 * p.a1 - tau, p.C2 * p.a2 * p.a2 - tau};
  }
  constexpr int kNodes = 257;
  const double r1 = radial_range(b1).second;
  const double r1b = radial_range(b2).first;
  const PressureField prof1 = solve_radial_pressure(b1, tau, RadialEnd::Outer, kNodes);
  const PressureField prof2 = solve_radial_pressure(b2, tau, RadialEnd::Inner, kNodes);
  return {pressure_at(prof1, r1), pressure_at(prof2, r1b)};
}

LoadInterval numeric_load_bounds(Example example, const ExampleParams& p, const SearchConfig& config) {
  validate(example, p);
  require(config.scan_points >= 3, "scan_points must be >= 3");
  require(config.tolerance > 0.0, "tolerance must be positive");
  if (!p.contact_closed) return open_singleton(open_value(example, p));

  const auto [b1, b2] = example_bodies(example, p);
  std::pair<double, double> w1, w2;
  if (config.window == WindowSource::Probed) {
    const double s1 = 1.5 * shear_constant(b1.material), s2 = 1.5 * shear_constant(b2.material);
    w1 = probed_window(b1, -s1, s1, config.probe_step, config.probe_count, config.seed);
    w2 = probed_window(b2, -s2, s2, config.probe_step, config.probe_count, config.seed);
  } else {
    w1 = pressure_window(b1);
    w2 = pressure_window(b2);
  }
  const double bound = open_value(example, p);
  auto feasible = [&](double tau) {
    if (!(tau < bound)) return false;
    const auto [p1, p2] = interface_pressures(example, p, tau);
    return w1.first < p1 && p1 < w1.second && w2.first < p2 && p2 < w2.second;
  };

  const auto [lo, hi] = oracle_bracket(example, p);
  const int n = config.scan_points;
  auto at = [&](int k) { return lo + (hi - lo) * k / (n - 1); };
  int first = -1, last = -1;
  for (int k = 0; k < n; ++k) {
    if (feasible(at(k))) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0) {
    throw Error(ErrorCode::InfeasibleProblem,
                std::string("no admissible pressure pair for the ") + to_string(example) + " example");
  }
  auto edge = [&](double in, double out) {
    while (std::abs(out - in) > config.tolerance) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (feasible(mid) ? in : out) = mid;
    }
    return 0.5 * (in + out);
  };
  const double tau_lo = first == 0 ? lo : edge(at(first), at(first - 1));
  const double tau_hi = last == n - 1 ? hi : edge(at(last), at(last + 1));
  return closed_interval(tau_lo, tau_hi);
}

std::pair<double, double> oracle_bracket(Example example, const ExampleParams& p) {
  const auto [b1, b2] = example_bodies(example, p);
  const double l1 = lambda_max(b1), l2 = lambda_max(b2);
  const double w = 2.0 * std::max(p.C1 * l1 * l1, p.C2 * l2 * l2);
  return {-w, open_value(example, p) + w};
}

LoadInterval brute_force_oracle(Example example, const ExampleParams& p, int grid_n) {
  require(grid_n >= 100, "grid_n must be >= 100");
  const auto [b1, b2] = example_bodies(example, p);
  const auto [lo, hi] = oracle_bracket(example, p);
  const double target = open_value(example, p);

  if (!p.contact_closed) {
    // A separated interface carries exactly the cohesive traction, which uniform equilibrium
    // passes to the loaded face.
    return open_singleton(target);
  }

  const double Xc = kBody1Domain.x_hi;
  const double ln1 = interface_normal_stretch(b1, Xc), ln2 = interface_normal_stretch(b2, Xc);
  const auto w1 = pressure_window(b1), w2 = pressure_window(b2);
  const double pw = hi - lo;
  const double dp = 2.0 * pw / grid_n;
  std::vector<double> s1, s2;  // tractions of admissible grid pressures
  for (int j = 0; j <= grid_n; ++j) {
    const double pr = -pw + j * dp;
    if (w1.first < pr && pr < w1.second) s1.push_back(p.C1 * ln1 * ln1 - pr);
    if (w2.first < pr && pr < w2.second) s2.push_back(p.C2 * ln2 * ln2 - pr);
  }
  auto reachable = [&](const std::vector<double>& s, double tau) {
    for (double t : s) {
      if (std::abs(t - tau) <= 0.5 * dp) return true;
    }
    return false;
  };
  double acc_lo = std::numeric_limits<double>::infinity();
  double acc_hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= grid_n; ++k) {
    const double tau = lo + (hi - lo) * k / grid_n;
    if (tau < target && reachable(s1, tau) && reachable(s2, tau)) {
      acc_lo = std::min(acc_lo, tau);
      acc_hi = std::max(acc_hi, tau);
    }
  }
  if (acc_lo > acc_hi) return closed_interval(0.0, 0.0);
  return {acc_lo, acc_hi, Regime::Closed, false};
}

}  // namespace cbounds
