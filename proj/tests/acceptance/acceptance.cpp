// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
// Usage: acceptance [path-to-cbounds] [config-dir]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "contact_bounds/bounds.hpp"
#include "contact_bounds/cli.hpp"
#include "contact_bounds/energy.hpp"
#include "contact_bounds/error.hpp"
#include "contact_bounds/trials.hpp"

using namespace cbounds;

namespace {

// Pinned tolerances.
constexpr int kGridN = 1000;
constexpr double kOracleResolutionFactor = 2.0;  // oracle endpoints within 2 grid cells of the bracket
constexpr double kNumericTol = 1e-6;
constexpr double kProfileResidualTol = 1e-8;
constexpr double kEnclosureOrderTol = 1e-9;
constexpr double kExactGapTol = 1e-8;
constexpr double kPiolaRelTol = 1e-6;
constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kDivergenceTol = 1e-9;
constexpr double kNegativeControlFloor = 1e-3;
constexpr double kProbeResolution = 0.02;
constexpr double kProbeStep = 0.01;
constexpr double kInjectivityTol = 1e-9;
constexpr double kScalingTol = 1e-12;
constexpr double kTranslationTol = 1e-12;
constexpr int kQuadOrder = 8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Worst {
  double value = 0.0;
  void take(double v) { value = std::max(value, v); }
};

double endpoint_gap(const LoadInterval& x, const LoadInterval& y) {
  return std::max(std::abs(x.tau_lo - y.tau_lo), std::abs(x.tau_hi - y.tau_hi));
}

double oracle_resolution(Example e, const ExampleParams& p) {
  const auto [lo, hi] = oracle_bracket(e, p);
  return kOracleResolutionFactor * (hi - lo) / kGridN;
}

ExampleParams triaxial_draw(std::mt19937_64& rng, bool cohesive) {
  std::uniform_real_distribution<double> C(0.5, 3.0), a(0.5, 0.99), g(0.1, 2.0);
  ExampleParams p;
  p.C1 = C(rng);
  p.C2 = C(rng);
  p.a1 = a(rng);
  p.a2 = a(rng);
  if (cohesive) p.g = g(rng);
  return p;
}

// Closed form vs oracle (2 cells) and numeric (kNumericTol) for one parameter set.
void compare(Example e, const ExampleParams& p, Worst& oracle_ratio, Worst& numeric, int& failures) {
  const LoadInterval cf = closed_form_interval(e, p);
  const LoadInterval o = brute_force_oracle(e, p, kGridN);
  if (cf.empty) {
    if (!o.empty) ++failures;
  } else {
    if (o.empty) {
      ++failures;
    } else {
      const double ratio = endpoint_gap(o, cf) / oracle_resolution(e, p);
      oracle_ratio.take(ratio);
      if (ratio > 1.0) ++failures;
    }
  }
  try {
    const LoadInterval n = numeric_load_bounds(e, p);
    const double err = cf.empty ? 1.0 : endpoint_gap(n, cf);
    numeric.take(err);
    if (err > kNumericTol) ++failures;
  } catch (const Error& err) {
    if (!(cf.empty && err.code() == ErrorCode::InfeasibleProblem)) ++failures;
  }
}

Outcome criterion1() {
  std::mt19937_64 rng(1001);
  Worst oracle, numeric;
  int failures = 0;
  for (int k = 0; k < 20; ++k) {
    const ExampleParams p = triaxial_draw(rng, false);
    const LoadInterval cf = closed_form_interval(Example::Compression, p);
    const double expected = -std::min(p.C1 * (std::sqrt(p.a1) - p.a1 * p.a1), p.C2 * (std::sqrt(p.a2) - p.a2 * p.a2));
    if (cf.tau_lo != expected || cf.tau_hi != 0.0) ++failures;
    compare(Example::Compression, p, oracle, numeric, failures);
  }
  return {failures == 0, "20 sets, oracle error/resolution max " + fmt("%.3g", oracle.value) +
                             ", numeric error max " + fmt("%.3g", numeric.value)};
}

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  Worst oracle, numeric;
  int failures = 0, singleton_failures = 0;
  for (int k = 0; k < 20; ++k) {
    ExampleParams p = triaxial_draw(rng, true);
    const LoadInterval cf = closed_form_interval(Example::Cohesive, p);
    const double upper = std::min(p.g, std::min(p.C1 * (std::sqrt(p.a1) + p.a1 * p.a1),
                                                p.C2 * (std::sqrt(p.a2) + p.a2 * p.a2)));
    if (cf.tau_hi != upper) ++failures;
    compare(Example::Cohesive, p, oracle, numeric, failures);

    p.contact_closed = false;
    const LoadInterval c = closed_form_interval(Example::Cohesive, p);
    const LoadInterval n = numeric_load_bounds(Example::Cohesive, p);
    const LoadInterval o = brute_force_oracle(Example::Cohesive, p, kGridN);
    for (const LoadInterval& in : {c, n, o}) {
      if (in.regime != Regime::Open || in.empty || in.tau_lo != p.g || in.tau_hi != p.g) ++singleton_failures;
    }
  }
  return {failures + singleton_failures == 0,
          "20 sets, oracle error/resolution max " + fmt("%.3g", oracle.value) + ", numeric error max " +
              fmt("%.3g", numeric.value) + ", open singleton mismatches " + std::to_string(singleton_failures)};
}

double max_profile_residual(const BodySpec& body, double interface_traction) {
  BodySpec b = body;
  b.pressure = solve_radial_pressure(b, interface_traction, b.domain.x_lo == kBody1Domain.x_lo ? RadialEnd::Outer : RadialEnd::Inner);
  const auto [r0, r1] = radial_range(b);
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) worst = std::max(worst, std::abs(radial_equilibrium_residual(b, r0 + (r1 - r0) * k / 100.0)));
  return worst;
}

Outcome criterion3() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> A(0.7, 1.3), a(0.7, 1.3), b(0.25, 2.0);
  Worst oracle, numeric, residual;
  int failures = 0, nonempty = 0;
  for (int k = 0; k < 10; ++k) {
    ExampleParams p;
    p.A = A(rng);
    p.a1 = p.a2 = a(rng);
    p.b1 = p.b2 = b(rng);  // r0 = sqrt(b) >= 0.5
    compare(Example::Bending, p, oracle, numeric, failures);
    const LoadInterval cf = closed_form_interval(Example::Bending, p);
    if (!cf.empty) ++nonempty;
    const double tau = cf.empty ? 0.0 : 0.5 * (cf.tau_lo + cf.tau_hi);
    const auto bodies = example_bodies(Example::Bending, p);
    for (const BodySpec* body : {&bodies.first, &bodies.second}) {
      const double r = max_profile_residual(*body, tau);
      residual.take(r);
      if (r >= kProfileResidualTol) ++failures;
    }
  }
  return {failures == 0, "10 sets (" + std::to_string(nonempty) + " non-empty), oracle error/resolution max " +
                             fmt("%.3g", oracle.value) + ", numeric error max " + fmt("%.3g", numeric.value) +
                             ", profile residual max " + fmt("%.3g", residual.value)};
}

Outcome criterion4() {
  const QuadratureRule rule(kQuadOrder);
  std::mt19937_64 rng(4004);
  Worst exact_gap;
  double violation = -HUGE_VAL;
  int failures = 0;
  for (auto family : {TrialFamily::Frictionless, TrialFamily::Cohesive, TrialFamily::Bending}) {
    for (int k = 0; k < 200; ++k) {
      const SystemSpec ex = random_exact_state(family, rng);
      const StaticField field = static_field_of(ex);
      const DeadLoad load = dead_load_of(field);
      const double gap = std::abs(potential_energy(ex, load, rule) - complementary_energy(field, ex, rule));
      exact_gap.take(gap);
      if (gap >= kExactGapTol) ++failures;
      const auto e = enclosure(random_kinematic_trial(ex, rng), static_trial(ex, random_static_perturbation(rng)),
                               load, rule);
      violation = std::max(violation, e.e_complementary - e.e_potential);
      if (e.e_complementary > e.e_potential + kEnclosureOrderTol) ++failures;
    }
  }
  return {failures == 0, "600 pairs, max E_c - E_p " + fmt("%.3g", violation) + ", exact |E_p - E_c| max " +
                             fmt("%.3g", exact_gap.value)};
}

Mat3 random_isochoric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (;;) {
    Mat3 F = Mat3::identity();
    for (double& x : F.m) x += u(rng);
    const double J = det(F);
    if (J < 0.5 || J > 2.0) continue;
    return F * (1.0 / std::cbrt(J));
  }
}

Outcome criterion5() {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> C(0.5, 3.0), p(-1.0, 1.0);
  Worst rel;
  for (int k = 0; k < 100; ++k) {
    const Mat3 F = random_isochoric(rng);
    const double c = C(rng), lambda = -p(rng);
    // W + lambda gamma with gamma = det F - 1; the pressure is -lambda.
    auto L = [&](const Mat3& H) { return 0.5 * c * (ddot(H, H) - 3.0) + lambda * (det(H) - 1.0); };
    const Mat3 P = piola_stress(NeoHookeanIncompressible{c}, F, -lambda);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
      Mat3 Fp = F, Fm = F;
      Fp.m[i] += kFiniteDifferenceStep;
      Fm.m[i] -= kFiniteDifferenceStep;
      const double fd = (L(Fp) - L(Fm)) / (2.0 * kFiniteDifferenceStep);
      num += (P.m[i] - fd) * (P.m[i] - fd);
      den += fd * fd;
    }
    rel.take(std::sqrt(num / den));
  }
  return {rel.value < kPiolaRelTol, "100 states, max relative error " + fmt("%.3g", rel.value)};
}

Outcome criterion6() {
  const QuadratureRule rule(kQuadOrder);
  Worst residual;
  for (double tau : {-0.2, -0.1, 0.0}) {
    residual.take(divergence_identity_residual(exact_triaxial_state({1.3, 0.7, 0.8, 0.9, -0.2}, tau), rule));
  }
  const double a = 8.0, ratio = 0.8;
  SystemSpec control = exact_bending_state({1.0, 1.5, std::sqrt(ratio / a), a, a, a * a / (ratio * ratio)}, -0.05);
  control.body1.pressure = ConstantPressure{0.6};
  control.body2.pressure = ConstantPressure{0.6};
  const double negative = divergence_identity_residual(control, rule);
  return {residual.value < kDivergenceTol && negative > kNegativeControlFloor,
          "exact residual max " + fmt("%.3g", residual.value) + ", constant-pressure bending residual " +
              fmt("%.3g", negative)};
}

Outcome criterion7() {
  Outcome out;
  auto check = [&](const std::string& label, const BodySpec& body, double expected) {
    const auto [lo, hi] = probed_window(body, -1.5 * expected, 1.5 * expected, kProbeStep, 200, 1);
    const bool ok = std::abs(lo + expected) <= kProbeResolution && std::abs(hi - expected) <= kProbeResolution;
    out.pass = out.pass && ok;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += label + " flips (" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + ") vs +-" + fmt("%.3f", expected) +
                  (ok ? "" : " MISS");
  };
  for (double a : {0.64, 0.81, 1.0}) {
    const BodySpec b{kBody1Domain, NeoHookeanIncompressible{1.0}, TriaxialStretch{a, 0.0}, ConstantPressure{}};
    check("a=" + fmt("%.2f", a), b, std::sqrt(a));
  }
  const BodySpec bend{kBody1Domain, NeoHookeanIncompressible{1.0}, StretchBend{1.0, 1.0, 1.0}, ConstantPressure{}};
  check("bending", bend, 1.0 / max_principal_stretch(bend.map, bend.domain));
  return out;
}

Outcome criterion8() {
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> a(0.2, 5.0), b(-1.0, 1.0), u(-0.5, 0.5);
  Worst gap;
  int members = 0, failures = 0;
  auto take = [&](const DeformationMap& m, const Box3& box) {
    const auto r = injectivity_report(m, box, kQuadOrder);
    gap.take(std::abs(r.jacobian_integral - r.image_volume));
    if (!r.injective || std::abs(r.jacobian_integral - r.image_volume) >= kInjectivityTol) ++failures;
    ++members;
  };
  for (int k = 0; k < 50; ++k) {
    take(TriaxialStretch{a(rng), b(rng)}, kBody1Domain);
    take(TriaxialStretch{a(rng), b(rng)}, kBody2Domain);
    Mat3 F = Mat3::identity();
    for (double& x : F.m) x += u(rng);
    if (det(F) <= 0.1) continue;
    take(Homogeneous{F, {b(rng), b(rng), b(rng)}}, Box3{});
  }
  bool raised = false;
  try {
    (void)injectivity_report(Homogeneous{Mat3::diag(1.0, 1.0, -1.0), {}}, Box3{}, kQuadOrder);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::NonPositiveJacobian;
  }
  return {failures == 0 && raised, std::to_string(members) + " affine maps, max |int J - vol| " +
                                       fmt("%.3g", gap.value) + ", reflection " +
                                       (raised ? "raises NonPositiveJacobian" : "NOT rejected")};
}

ProblemConfig config_from(const ExampleParams& p, const char* example, std::uint64_t seed) {
  ProblemConfig c;
  c.example = example;
  c.body1.C = p.C1;
  c.body2.C = p.C2;
  c.body1.a = p.a1;
  c.body2.a = p.a2;
  c.g = p.g;
  c.A = p.A;
  if (std::string(example) == "bending") c.body1.b = p.b1;
  c.seed = seed;
  return c;
}

Outcome criterion9() {
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> A(0.7, 1.3), a(0.7, 1.3), b(0.25, 2.0);
  int runs = 0, violations = 0;
  Worst numeric_scaling;
  auto metamorphic = [&](const ProblemConfig& c) {
    const VerifyReport v = verify(c);
    for (const auto& chk : v.checks) {
      if (chk.name == "scaling_covariance" || chk.name == "swap_symmetry" || chk.name == "translation_invariance") {
        if (!chk.passed) ++violations;
      }
    }
    ++runs;
  };
  for (int k = 0; k < 10; ++k) {
    const ExampleParams p1 = triaxial_draw(rng, false), p2 = triaxial_draw(rng, true);
    metamorphic(config_from(p1, "compression", 100 + k));
    metamorphic(config_from(p2, "cohesive", 200 + k));
    ExampleParams pb;
    pb.A = A(rng);
    pb.a1 = pb.a2 = a(rng);
    pb.b1 = pb.b2 = b(rng);
    metamorphic(config_from(pb, "bending", 300 + k));

    // Exact scaling of every endpoint, bending included, and numeric endpoints.
    for (double s : {0.5, 2.0, 10.0}) {
      for (auto [e, base] : {std::pair{Example::Compression, p1}, std::pair{Example::Cohesive, p2},
                             std::pair{Example::Bending, pb}}) {
        ExampleParams q = base;
        q.C1 *= s;
        q.C2 *= s;
        q.g *= s;
        const LoadInterval x = closed_form_interval(e, base), y = closed_form_interval(e, q);
        if (x.empty != y.empty || (!x.empty && endpoint_gap(y, scaled(x, s)) > kScalingTol * s)) ++violations;
        if (e != Example::Bending && !x.empty) {
          const double err = endpoint_gap(numeric_load_bounds(e, q), scaled(numeric_load_bounds(e, base), s)) / s;
          numeric_scaling.take(err);
          if (err > kNumericTol) ++violations;
        }
      }
    }
  }
  // Translation of all residuals, directly on exact states.
  const QuadratureRule rule(kQuadOrder);
  Worst shift;
  for (int k = 0; k < 20; ++k) {
    const SystemSpec s = random_exact_state(k % 2 ? TrialFamily::Cohesive : TrialFamily::Frictionless, rng);
    SystemSpec t = s;
    for (DeformationMap* m : {&t.body1.map, &t.body2.map, &t.prescribed}) std::get<TriaxialStretch>(*m).b += 0.37;
    const double d = std::max({std::abs(divergence_identity_residual(s, rule) - divergence_identity_residual(t, rule)),
                               std::abs(evaluate_contact(s).gap - evaluate_contact(t).gap),
                               std::abs(evaluate_contact(s).action_reaction_residual -
                                        evaluate_contact(t).action_reaction_residual)});
    const auto k0 = check_kinematic(s), k1 = check_kinematic(t);
    double r = d;
    for (const auto& [name, val] : k0.residuals) r = std::max(r, std::abs(val - k1.residuals.at(name)));
    shift.take(r);
    if (r > kTranslationTol) ++violations;
  }
  return {violations == 0, std::to_string(runs) + " verify runs plus direct sweeps, violations " +
                               std::to_string(violations) + ", numeric scaling error max " +
                               fmt("%.3g", numeric_scaling.value) + ", translation drift max " +
                               fmt("%.3g", shift.value)};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

Outcome criterion10(const std::string& cbounds, const std::string& config_dir) {
  int compared = 0, mismatches = 0;
  ProblemConfig c;
  c.body1.a = c.body2.a = 0.81;
  c.tau = -0.1;
  for (auto f : {ReportFormat::Report, ReportFormat::Json}) {
    if (format_verify(verify(c), f) != format_verify(verify(c), f)) ++mismatches;
    ++compared;
  }
  if (!cbounds.empty()) {
    for (const char* name : {"compression", "cohesive", "bending"}) {
      const std::string cmd = cbounds + " verify --config " + config_dir + "/" + name + ".ini --seed 7 2>&1";
      const std::string first = capture(cmd), second = capture(cmd);
      if (first.empty() || first != second) ++mismatches;
      ++compared;
    }
  }
  return {mismatches == 0, std::to_string(compared) + " report pairs compared" +
                               (cbounds.empty() ? " (in-process only)" : " (in-process and via the CLI)") +
                               ", mismatches " + std::to_string(mismatches)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cbounds = argc > 1 ? argv[1] : "";
  const std::string config_dir = argc > 2 ? argv[2] : "configs";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"compression interval reproduction", criterion1},
      {"cohesive interval reproduction", criterion2},
      {"bending interval reproduction", criterion3},
      {"energy enclosure", criterion4},
      {"stress consistency", criterion5},
      {"divergence identity", criterion6},
      {"criteria window", criterion7},
      {"injectivity equality", criterion8},
      {"metamorphic suite", criterion9},
      {"determinism", [&] { return criterion10(cbounds, config_dir); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
