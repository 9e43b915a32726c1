#pragma once

#include <map>
#include <string>

#include "contact_bounds/kinematics.hpp"
#include "contact_bounds/material.hpp"
#include "contact_bounds/quadrature.hpp"

namespace cbounds {

struct BodySpec {
  Box3 domain;
  MaterialModel material = NeoHookeanIncompressible{};
  DeformationMap map = TriaxialStretch{};
  PressureField pressure = ConstantPressure{};
};

// Body 1 occupies x_lo <= X <= X_c and body 2 X_c <= X <= x_hi, sharing the contact plane X = X_c.
// The Neumann face is body 1's X = x_lo face; the Dirichlet face is body 2's X = x_hi face, where
// the placement is prescribed as chi_D(X) = prescribed(X) + dirichlet_offset e_x.
struct SystemSpec {
  BodySpec body1;
  BodySpec body2;
  DeformationMap prescribed = TriaxialStretch{};
  double dirichlet_offset = 0.0;
  double d_allow = 0.0;
  double g = 0.0;
};

SystemSpec default_system();
inline const Box3 kBody1Domain{0.0, 0.5, 0.0, 1.0, 0.0, 1.0};
inline const Box3 kBody2Domain{0.5, 1.0, 0.0, 1.0, 0.0, 1.0};

enum class Regime { Closed, Open };
const char* to_string(Regime r);

// Normal interface traction as a Cauchy stress (per deformed area) or a nominal one
// (per reference area).
enum class TractionMeasure { Cauchy, Nominal };

struct Tolerances {
  double gap = 1e-10;
  double dirichlet = 1e-10;
  double constraint = 1e-10;
  double equilibrium = 1e-8;
  double neumann = 1e-10;
  double traction_sign = 1e-10;
  double action_reaction = 1e-10;
};

struct ContactEvaluation {
  double gap = 0.0;
  double traction_normal = 0.0;  // body 1
  double traction_body2 = 0.0;
  double complementarity_residual = 0.0;
  double action_reaction_residual = 0.0;
  Regime regime = Regime::Closed;
};

struct AdmissibilityReport {
  bool kinematic_ok = true;
  bool static_ok = true;
  std::map<std::string, double> residuals;
};

void validate(const BodySpec& body);
// Also checks the two bodies share the contact plane, d_allow >= 0 and g >= 0.
void validate(const SystemSpec& system);

// Hydrostatic pressure at a reference point. Radial profiles are indexed by the deformed
// radius and need the bending family; other families raise FamilyMismatch.
double pressure_at(const BodySpec& body, const Vec3& X);
// (Cartesian F, p) of the body's own state at X.
ConstitutiveState body_state(const BodySpec& body, const Vec3& X);
Mat3 cartesian_piola(const BodySpec& body, const Vec3& X);

double contact_plane(const SystemSpec& system);

// Signed normal separation of the interface images; <= 0 means no interpenetration.
double gap_value(const SystemSpec& system);

// Normal traction on the X = X_face plane of the body, in the principal frame.
double contact_traction(const BodySpec& body, double X_face,
                        TractionMeasure measure = TractionMeasure::Cauchy);
// Bending form, taking the deformed interface radius directly: -p(r) + C a^2 / r^2.
double contact_traction_at_radius(const BodySpec& body, double r);

ContactEvaluation evaluate_contact(const SystemSpec& system,
                                   TractionMeasure measure = TractionMeasure::Cauchy,
                                   const Tolerances& tol = {});

// Prescribed placement on the Dirichlet face.
Vec3 dirichlet_placement(const SystemSpec& system, const Vec3& X);

AdmissibilityReport check_kinematic(const SystemSpec& system, const Tolerances& tol = {},
                                    int quad_order = kDefaultQuadOrder);
AdmissibilityReport check_static(const SystemSpec& system, double tau,
                                 TractionMeasure measure = TractionMeasure::Cauchy,
                                 const Tolerances& tol = {});

// Residual d sigma_rr/dr - (sigma_thetatheta - sigma_rr)/r of a bending body at deformed radius r.
double radial_equilibrium_residual(const BodySpec& body, double r);

enum class RadialEnd { Inner, Outer };

// Deformed radial range of a bending body.
std::pair<double, double> radial_range(const BodySpec& body);

// Pressure profile in equilibrium with sigma_rr = boundary_traction (Cauchy) at the chosen end
// of the body's radial range.
PressureField solve_radial_pressure(const BodySpec& body, double boundary_traction,
                                    RadialEnd end = RadialEnd::Inner, int nodes = 2049);

}  // namespace cbounds
