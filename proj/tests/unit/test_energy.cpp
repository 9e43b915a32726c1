#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "contact_bounds/energy.hpp"
#include "contact_bounds/error.hpp"
#include "contact_bounds/trials.hpp"

using namespace cbounds;

namespace {

const QuadratureRule kRule(8);

SystemSpec triaxial_pair(double a, double b1) {
  SystemSpec s = default_system();
  s.body1.map = TriaxialStretch{a, b1};
  s.body2.map = TriaxialStretch{a, b1};
  s.prescribed = s.body2.map;
  return s;
}

SystemSpec stable_bending() {
  const double a = 8.0, ratio = 0.8;
  return exact_bending_state({1.0, 1.5, std::sqrt(ratio / a), a, a, a * a / (ratio * ratio)}, -0.05);
}

}  // namespace

TEST(Energy, IdentityPotentialIsZero) {
  EXPECT_NEAR(potential_energy(default_system(), 0.0, kRule), 0.0, 1e-15);
}

TEST(Energy, TriaxialStrainEnergyExample) {
  const double a = 0.81;
  const double w = 0.5 * (a * a + 2.0 / a - 3.0);
  EXPECT_NEAR(w, 0.0626179012, 1e-10);
  EXPECT_NEAR(potential_energy(triaxial_pair(a, 0.0), 0.0, kRule), w, 1e-10);
}

TEST(Energy, DeadLoadWorkOnLoadedFace) {
  // g_N = tau N with N = -e_x and chi_x = b1 on X = 0, so E_p moves by tau b1.
  const SystemSpec s = triaxial_pair(0.81, 0.3);
  const double e0 = potential_energy(s, 0.0, kRule);
  EXPECT_NEAR(potential_energy(s, -0.1, kRule) - e0, -0.1 * 0.3, 1e-13);
}

TEST(Energy, IdentityComplementaryIsZero) {
  SystemSpec s = default_system();
  s.body1.pressure = ConstantPressure{1.0};
  s.body2.pressure = ConstantPressure{1.0};
  EXPECT_NEAR(complementary_energy(s, kRule), 0.0, 1e-15);
  EXPECT_NEAR(divergence_identity_residual(s, kRule), 0.0, 1e-15);
}

TEST(Energy, ExactStatesCloseTheEnclosure) {
  const SystemSpec states[] = {exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1}, -0.1),
                               exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1, 0.5, 0.02}, 0.5),
                               stable_bending()};
  for (const auto& s : states) {
    const auto e = enclosure(s, s, nominal_load(s), kRule);
    EXPECT_LT(std::abs(e.gap), 1e-9);
    EXPECT_NEAR(potential_energy(s, dead_load_of(static_field_of(s)), kRule),
                complementary_energy(s, kRule), 1e-9);
  }
}

TEST(Energy, DivergenceIdentityAtExactTriaxialStates) {
  for (double tau : {-0.2, -0.1, 0.0}) {
    const SystemSpec s = exact_triaxial_state({1.3, 0.7, 0.8, 0.9, -0.2}, tau);
    EXPECT_LT(divergence_identity_residual(s, kRule), 1e-9) << tau;
  }
}

TEST(Energy, DivergenceIdentityNegativeControl) {
  SystemSpec s = stable_bending();
  s.body1.pressure = ConstantPressure{0.6};
  s.body2.pressure = ConstantPressure{0.6};
  EXPECT_GT(divergence_identity_residual(s, kRule), 1e-3);
}

TEST(Energy, PerturbedTrialsOpenTheGap) {
  std::mt19937_64 rng(11);
  const SystemSpec ex = exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1}, -0.1);
  const StaticField exact_field = static_field_of(ex);
  const DeadLoad load = dead_load_of(exact_field);
  const double e_exact = complementary_energy(exact_field, ex, kRule);

  const auto kin = enclosure(kinematic_trial(ex, 0.05, 0.0), exact_field, load, kRule);
  EXPECT_GT(kin.gap, 0.0);
  EXPECT_NEAR(kin.e_complementary, e_exact, 1e-12);

  const StaticField st = static_trial(ex, random_static_perturbation(rng));
  const auto sta = enclosure(ex, st, load, kRule);
  EXPECT_GT(sta.gap, 0.0);
  EXPECT_LT(sta.e_complementary, e_exact);
}

TEST(Energy, EnclosureOrderingOnRandomPairs) {
  std::mt19937_64 rng(2024);
  for (auto family : {TrialFamily::Frictionless, TrialFamily::Cohesive, TrialFamily::Bending}) {
    for (int k = 0; k < 15; ++k) {
      const SystemSpec ex = random_exact_state(family, rng);
      const DeadLoad load = dead_load_of(static_field_of(ex));
      const auto e = enclosure(random_kinematic_trial(ex, rng),
                               static_trial(ex, random_static_perturbation(rng)), load, kRule);
      EXPECT_LE(e.e_complementary, e.e_potential + kEnclosureTolerance) << to_string(family);
    }
  }
}

TEST(Energy, PotentialIsAffineInLoad) {
  std::mt19937_64 rng(5);
  const SystemSpec ex = exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1}, -0.1);
  const SystemSpec kin = random_kinematic_trial(ex, rng);
  const double e0 = potential_energy(kin, -0.3, kRule);
  const double e1 = potential_energy(kin, -0.1, kRule);
  const double e2 = potential_energy(kin, 0.2, kRule);
  EXPECT_NEAR((e1 - e0) / 0.2, (e2 - e1) / 0.3, 1e-12);
}

TEST(Energy, QuadratureConvergence) {
  const QuadratureRule fine(16);
  for (const SystemSpec& s : {exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1}, -0.1), stable_bending()}) {
    const DeadLoad load = dead_load_of(static_field_of(s));
    EXPECT_NEAR(potential_energy(s, load, kRule), potential_energy(s, load, fine), 1e-9);
    EXPECT_NEAR(complementary_energy(s, kRule), complementary_energy(s, fine), 1e-9);
  }
}

TEST(Energy, LinearScalingInModuli) {
  const TriaxialCase base{1.0, 0.81, 2.0, 0.64, 0.1, 0.4, 0.01};
  const double tau = 0.3;
  const SystemSpec s = exact_triaxial_state(base, tau);
  const double ep = potential_energy(s, dead_load_of(static_field_of(s)), kRule);
  const double ec = complementary_energy(s, kRule);
  for (double k : {0.5, 2.0, 10.0}) {
    TriaxialCase c = base;
    c.C1 *= k;
    c.C2 *= k;
    c.g *= k;
    const SystemSpec sk = exact_triaxial_state(c, k * tau);
    EXPECT_NEAR(std::get<ConstantPressure>(sk.body1.pressure).p,
                k * std::get<ConstantPressure>(s.body1.pressure).p, 1e-14 * k);
    EXPECT_NEAR(potential_energy(sk, dead_load_of(static_field_of(sk)), kRule), k * ep, 1e-13 * k);
    EXPECT_NEAR(complementary_energy(sk, kRule), k * ec, 1e-13 * k);
  }
}

TEST(Energy, InadmissibleTrialsNameTheResidual) {
  const SystemSpec ex = exact_triaxial_state({1.0, 0.81, 2.0, 0.64, 0.1}, -0.1);
  const StaticField field = static_field_of(ex);
  const DeadLoad load = dead_load_of(field);

  SystemSpec penetrating = ex;
  std::get<TriaxialStretch>(penetrating.body1.map).b += 0.01;
  try {
    (void)enclosure(penetrating, field, load, kRule);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissibleTrial);
    EXPECT_NE(std::string(e.what()).find("gap"), std::string::npos);
  }

  try {
    (void)enclosure(ex, field, normal_dead_load(-0.2), kRule);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissibleTrial);
    EXPECT_NE(std::string(e.what()).find("neumann"), std::string::npos);
  }
}
