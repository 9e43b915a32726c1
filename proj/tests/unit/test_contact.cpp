#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "contact_bounds/contact.hpp"
#include "contact_bounds/error.hpp"

using namespace cbounds;

namespace {

// Two triaxial bodies in closed contact, pressures linked so both Cauchy tractions equal tau.
SystemSpec compression_state(double C1, double a1, double C2, double a2, double tau, double b1 = 0.0) {
  SystemSpec s = default_system();
  s.body1.material = NeoHookeanIncompressible{C1};
  s.body2.material = NeoHookeanIncompressible{C2};
  s.body1.map = TriaxialStretch{a1, b1};
  const double b2 = b1 + 0.5 * (a1 - a2);
  s.body2.map = TriaxialStretch{a2, b2};
  s.prescribed = s.body2.map;
  s.body1.pressure = ConstantPressure{C1 * a1 * a1 - tau};
  s.body2.pressure = ConstantPressure{C2 * a2 * a2 - tau};
  return s;
}

// Closed-form sigma_rr of a bending body anchored at (r_end, sigma_end).
double sigma_rr_exact(const StretchBend& m, double C, double r_end, double sigma_end, double r) {
  return sigma_end + C * (m.A * m.A * (r * r - r_end * r_end) / (2.0 * m.a) +
                          0.5 * m.a * m.a * (1.0 / (r * r) - 1.0 / (r_end * r_end)));
}

}  // namespace

TEST(Contact, GapValue) {
  SystemSpec s = default_system();
  EXPECT_DOUBLE_EQ(gap_value(s), 0.0);
  s.body1.map = TriaxialStretch{1.0, -0.1};
  EXPECT_NEAR(gap_value(s), -0.1, 1e-15);
  s.body1.map = StretchBend{1.0, 1.0, 1.0};
  s.body2.map = StretchBend{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(gap_value(s), 0.0);
  s.body2.map = TriaxialStretch{};
  try {
    (void)gap_value(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FamilyMismatch);
  }
}

TEST(Contact, BendingGapIsRadiusDifference) {
  SystemSpec s = default_system();
  s.body1.map = StretchBend{1.0, 1.0, 0.5};
  s.body2.map = StretchBend{1.0, 1.2, 0.7};
  EXPECT_NEAR(gap_value(s), std::sqrt(1.0 + 0.5) - std::sqrt(1.2 + 0.7), 1e-15);
}

TEST(Contact, TractionExamples) {
  BodySpec b;
  b.domain = kBody1Domain;
  b.pressure = ConstantPressure{1.0};
  EXPECT_NEAR(contact_traction(b, 0.5), 0.0, 1e-15);
  b.map = TriaxialStretch{0.81, 0.0};
  b.pressure = ConstantPressure{0.0};
  EXPECT_NEAR(contact_traction(b, 0.5), 0.6561, 1e-14);
  b.material = NeoHookeanIncompressible{2.0};
  b.map = TriaxialStretch{0.9, 0.0};
  b.pressure = ConstantPressure{2.0};
  EXPECT_NEAR(contact_traction(b, 0.5), -0.38, 1e-14);
  EXPECT_NEAR(contact_traction(b, 0.5, TractionMeasure::Nominal), 2.0 * 0.9 - 2.0 / 0.9, 1e-14);
}

TEST(Contact, BendingTractionAtRadius) {
  BodySpec b;
  b.domain = kBody1Domain;
  b.map = StretchBend{1.0, 1.0, 1.0};
  b.pressure = ConstantPressure{0.2};
  const double r1 = std::sqrt(2.0);
  EXPECT_NEAR(contact_traction_at_radius(b, r1), -0.2 + 0.5, 1e-15);
  EXPECT_NEAR(contact_traction(b, 0.5), -0.2 + 0.5, 1e-14);
}

TEST(Contact, EvaluateStressFreeClosed) {
  SystemSpec s = default_system();
  s.body1.pressure = ConstantPressure{1.0};
  s.body2.pressure = ConstantPressure{1.0};
  const auto ev = evaluate_contact(s);
  EXPECT_EQ(ev.regime, Regime::Closed);
  EXPECT_NEAR(ev.gap, 0.0, 1e-15);
  EXPECT_NEAR(ev.complementarity_residual, 0.0, 1e-15);
  EXPECT_NEAR(ev.action_reaction_residual, 0.0, 1e-15);
}

TEST(Contact, EvaluateOpenGapZeroTraction) {
  SystemSpec s = default_system();
  s.body1.map = TriaxialStretch{1.0, -0.1};
  s.body1.pressure = ConstantPressure{1.0};
  s.body2.pressure = ConstantPressure{1.0};
  const auto ev = evaluate_contact(s);
  EXPECT_EQ(ev.regime, Regime::Open);
  EXPECT_NEAR(ev.complementarity_residual, 0.0, 1e-15);
  const auto st = check_static(s, 0.0);
  EXPECT_TRUE(st.static_ok);
  // Open interface with a compressive traction is not statically admissible.
  s.body1.pressure = ConstantPressure{1.2};
  s.body2.pressure = ConstantPressure{1.2};
  EXPECT_FALSE(check_static(s, -0.2).static_ok);
}

TEST(Contact, EvaluateClosedMatchedTractions) {
  const auto s = compression_state(1.0, 0.81, 1.0, 0.81, -0.1);
  const auto ev = evaluate_contact(s);
  EXPECT_NEAR(ev.traction_normal, -0.1, 1e-14);
  EXPECT_NEAR(ev.traction_body2, -0.1, 1e-14);
  EXPECT_NEAR(ev.action_reaction_residual, 0.0, 1e-15);
  EXPECT_NEAR(ev.complementarity_residual, 0.0, 1e-15);
}

TEST(Contact, CheckKinematic) {
  SystemSpec s = default_system();
  auto rep = check_kinematic(s);
  EXPECT_TRUE(rep.kinematic_ok);
  EXPECT_DOUBLE_EQ(rep.residuals["dirichlet"], 0.0);
  EXPECT_DOUBLE_EQ(rep.residuals["gap"], 0.0);
  EXPECT_DOUBLE_EQ(rep.residuals["constraint"], 0.0);

  s.body2.map = TriaxialStretch{1.0, 0.05};
  rep = check_kinematic(s);
  EXPECT_NEAR(rep.residuals["dirichlet"], 0.05, 1e-15);
  EXPECT_FALSE(rep.kinematic_ok);

  s = default_system();
  s.body1.map = TriaxialStretch{1.0, 0.1};
  rep = check_kinematic(s);
  EXPECT_NEAR(rep.residuals["gap"], 0.1, 1e-15);
  EXPECT_FALSE(rep.kinematic_ok);

  s = default_system();
  s.dirichlet_offset = 0.02;
  EXPECT_NEAR(check_kinematic(s).residuals["dirichlet"], 0.02, 1e-15);
}

TEST(Contact, CheckStatic) {
  SystemSpec s = default_system();
  s.body1.pressure = ConstantPressure{1.0};
  s.body2.pressure = ConstantPressure{1.0};
  const auto rep = check_static(s, 0.0);
  EXPECT_TRUE(rep.static_ok);
  for (const auto& [k, v] : rep.residuals) EXPECT_NEAR(v, 0.0, 1e-15) << k;

  const auto t = compression_state(1.0, 0.81, 1.0, 0.81, -0.1);
  const auto rt = check_static(t, -0.1);
  EXPECT_NEAR(rt.residuals.at("neumann"), 0.0, 1e-15);
  EXPECT_TRUE(rt.static_ok);
  EXPECT_FALSE(check_static(t, -0.2).static_ok);
}

TEST(Contact, BendingConstantPressureFailsEquilibrium) {
  SystemSpec s = default_system();
  s.body1.map = StretchBend{1.0, 1.0, 1.0};
  s.body2.map = StretchBend{1.0, 1.0, 1.0};
  s.body1.pressure = ConstantPressure{0.5};
  s.body2.pressure = ConstantPressure{0.5};
  const auto rep = check_static(s, 0.0);
  EXPECT_GT(rep.residuals.at("equilibrium"), 1e-3);
  EXPECT_FALSE(rep.static_ok);
}

TEST(Contact, RadialPressureMatchesClosedForm) {
  BodySpec b;
  b.domain = kBody1Domain;
  const StretchBend m{1.0, 1.0, 1.0};
  b.map = m;
  b.pressure = solve_radial_pressure(b, 0.0, RadialEnd::Inner);
  const auto [r0, r1] = radial_range(b);
  EXPECT_NEAR(r0, 1.0, 1e-15);
  EXPECT_NEAR(r1, std::sqrt(2.0), 1e-15);
  for (int k = 0; k <= 200; ++k) {
    const double r = r0 + (r1 - r0) * k / 200.0;
    const double sigma = m.a * m.a / (r * r) - pressure_at(b.pressure, r);
    const double exact = sigma_rr_exact(m, 1.0, r0, 0.0, r);
    EXPECT_NEAR(sigma, exact, 1e-8 * std::max(1.0, std::abs(exact)));
    EXPECT_LT(std::abs(radial_equilibrium_residual(b, r)), 1e-8);
  }
}

TEST(Contact, RadialPressureSelfConvergence) {
  BodySpec b;
  b.domain = kBody1Domain;
  b.map = StretchBend{1.3, 0.8, 0.6};
  b.material = NeoHookeanIncompressible{1.7};
  const PressureField coarse = solve_radial_pressure(b, -0.2, RadialEnd::Outer, 257);
  const PressureField fine = solve_radial_pressure(b, -0.2, RadialEnd::Outer, 4097);
  const auto [r0, r1] = radial_range(b);
  for (int k = 0; k <= 50; ++k) {
    const double r = r0 + (r1 - r0) * k / 50.0;
    const double pf = pressure_at(fine, r);
    EXPECT_NEAR(pressure_at(coarse, r), pf, 1e-8 * std::max(1.0, std::abs(pf)));
  }
  b.pressure = fine;
  EXPECT_NEAR(contact_traction_at_radius(b, r1), -0.2, 1e-12);
}

TEST(Contact, RadialPressureNearIdentity) {
  BodySpec b;
  b.domain = kBody1Domain;
  // a ~ r and A = 1/sqrt(a) keep all three stretches within 1e-4 of one.
  b.map = StretchBend{0.01, 1e4, 1e8};
  b.pressure = solve_radial_pressure(b, 0.0, RadialEnd::Inner);
  const auto [r0, r1] = radial_range(b);
  for (double r : {r0, 0.5 * (r0 + r1), r1}) EXPECT_NEAR(pressure_at(b.pressure, r), 1.0, 1e-3);
  EXPECT_NEAR(contact_traction_at_radius(b, r1), 0.0, 1e-3);
}

TEST(Contact, RadialPressureRejectsOtherFamilies) {
  BodySpec b;
  b.domain = kBody1Domain;
  EXPECT_THROW((void)solve_radial_pressure(b, 0.0), Error);
}

TEST(ContactProperty, CompressionActionReaction) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double C1 = 0.5 + 2.5 * u(rng), C2 = 0.5 + 2.5 * u(rng);
    const double a1 = 0.5 + 0.49 * u(rng), a2 = 0.5 + 0.49 * u(rng);
    const double tau = -0.3 * u(rng);
    const auto s = compression_state(C1, a1, C2, a2, tau, u(rng));
    const auto ev = evaluate_contact(s);
    EXPECT_LT(ev.action_reaction_residual, 1e-12);
    EXPECT_EQ(ev.regime, Regime::Closed);
    EXPECT_LT(std::abs(ev.complementarity_residual), 1e-10);
    EXPECT_TRUE(check_kinematic(s).kinematic_ok);
    EXPECT_TRUE(check_static(s, tau).static_ok);
  }
}

TEST(ContactProperty, TranslationInvariance) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double a1 = 0.5 + 0.49 * u(rng), a2 = 0.5 + 0.49 * u(rng), tau = -0.2 * u(rng);
    const auto s = compression_state(1.0, a1, 1.3, a2, tau, 0.0);
    auto t = s;
    const double delta = u(rng) - 0.5;
    std::get<TriaxialStretch>(t.body1.map).b += delta;
    std::get<TriaxialStretch>(t.body2.map).b += delta;
    std::get<TriaxialStretch>(t.prescribed).b += delta;
    const auto k0 = check_kinematic(s), k1 = check_kinematic(t);
    for (const auto& [name, v] : k0.residuals) EXPECT_NEAR(k1.residuals.at(name), v, 1e-12) << name;
    const auto s0 = check_static(s, tau), s1 = check_static(t, tau);
    for (const auto& [name, v] : s0.residuals) EXPECT_NEAR(s1.residuals.at(name), v, 1e-12) << name;
  }
}

TEST(Contact, SystemValidation) {
  SystemSpec s = default_system();
  EXPECT_NO_THROW(validate(s));
  s.g = -1.0;
  EXPECT_THROW(validate(s), Error);
  s = default_system();
  s.body2.domain.x_lo = 0.6;
  EXPECT_THROW(validate(s), Error);
  s = default_system();
  s.body1.map = Homogeneous{Mat3::diag(2, 1, 1), {}};
  s.body2.map = Homogeneous{};
  try {
    validate(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstraintViolated);
  }
}
