#pragma once

#include <random>

#include "contact_bounds/energy.hpp"

namespace cbounds {

// Two triaxial bodies. `opening` separates the interface; g is the cohesion.
struct TriaxialCase {
  double C1 = 1.0, a1 = 1.0;
  double C2 = 1.0, a2 = 1.0;
  double b1 = 0.0;
  double g = 0.0;
  double opening = 0.0;
};

// Two bending bodies sharing A; body 2 closes the interface when b2 = a1 + b1 - a2.
struct BendingCase {
  double C1 = 1.0, C2 = 1.0;
  double A = 1.0;
  double a1 = 1.0, a2 = 1.0;
  double b1 = 1.0;
};

// Equilibrium state with nominal traction tau on the Neumann face and matched nominal tractions
// on the contact plane. Body 2's map is the prescribed Dirichlet map.
SystemSpec exact_triaxial_state(const TriaxialCase& c, double tau);

// Equilibrium state whose body 1 carries Cauchy sigma_rr = traction on its side of the interface.
// Both bodies carry radial pressure profiles; nominal radial tractions match at the interface and
// the Neumann load follows from radial equilibrium.
SystemSpec exact_bending_state(const BendingCase& c, double traction);

// Nominal normal traction of body 1 on the Neumann face.
double nominal_load(const SystemSpec& state);

// Body 1 re-stretched by (1 + da) and moved so the gap is d_allow - opening, opening >= 0.
// Body 2 is untouched, so the Dirichlet data still hold.
SystemSpec kinematic_trial(const SystemSpec& exact, double da, double opening);
SystemSpec random_kinematic_trial(const SystemSpec& exact, std::mt19937_64& rng,
                                  double max_da = 0.1, double max_opening = 0.02);

// Stress function phi = kappa u^2 v^2 (c0 + c1 X + c2 S) in the (X, S) plane of a body, where
// u, v vanish on the faces. Its stress is self-equilibrated and traction-free on every face.
struct AiryMode {
  double kappa = 0.0;
  double c0 = 1.0, c1 = 0.0, c2 = 0.0;
};

struct StaticPerturbation {
  AiryMode xy1, xz1;  // body 1
  AiryMode xy2, xz2;  // body 2
};

enum class TrialFamily { Frictionless, Cohesive, Bending };
const char* to_string(TrialFamily f);

// True when |p| < C / lambda_max holds at every sampled point of both bodies.
bool within_pressure_window(const SystemSpec& state);

// Seeded exact state of the family, redrawn until it lies inside the pressure window.
// Bending states use a1 = a2 with a / r near 0.8 across the slab.
SystemSpec random_exact_state(TrialFamily family, std::mt19937_64& rng);

// Nominal stress of the XY and XZ modes at X.
Mat3 airy_stress(const Box3& domain, const AiryMode& xy, const AiryMode& xz, const Vec3& X);

StaticPerturbation random_static_perturbation(std::mt19937_64& rng, double scale = 0.05);

// Exact nominal stress plus the perturbation, with (F, p) recovered by stress inversion.
StaticField static_trial(const SystemSpec& exact, const StaticPerturbation& pert);

}  // namespace cbounds
