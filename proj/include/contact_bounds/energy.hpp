#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "contact_bounds/contact.hpp"

namespace cbounds {

// A static trial for one body: Cartesian F and pressure at each reference point.
struct StaticBody {
  Box3 domain;
  MaterialModel material = NeoHookeanIncompressible{};
  std::function<ConstitutiveState(const Vec3&)> state;
};

struct StaticField {
  StaticBody body1;
  StaticBody body2;
};

StaticField static_field_of(const SystemSpec& system);
Mat3 piola_at(const StaticBody& body, const Vec3& X);

// Faces where a dead load may act: body 1's X = x_lo face and the lateral faces of both bodies.
// Body index is 1 or 2.
struct BodyFace {
  int body = 1;
  Face face = Face::XLo;
};
const std::vector<BodyFace>& neumann_faces();

// Nominal traction per reference area on the Neumann faces.
struct DeadLoad {
  std::function<Vec3(int body, Face face, const Vec3& X)> traction;
};

// tau N on body 1's X = x_lo face (N = -e_x), traction-free lateral faces.
DeadLoad normal_dead_load(double tau);
// P N of the given static field on every Neumann face.
DeadLoad dead_load_of(const StaticField& field);

// sum_bodies int W(F) dV - int_{Neumann} g . chi dA, plus g (d - eta) over the contact face
// when the interface is cohesive.
double potential_energy(const SystemSpec& system, const DeadLoad& load, const QuadratureRule& rule);
double potential_energy(const SystemSpec& system, double tau, const QuadratureRule& rule);

// int_{Gamma_D} P N . chi_D dA - sum_bodies int W_c dV, with chi_D taken from `dirichlet`.
double complementary_energy(const StaticField& field, const SystemSpec& dirichlet,
                            const QuadratureRule& rule);
double complementary_energy(const SystemSpec& system, const QuadratureRule& rule);

// sum over bodies of | int_{boundary} P N . chi dA - int P : Grad chi dV | for the static field
// P and the kinematic placement chi.
double divergence_identity_residual(const SystemSpec& kinematic, const StaticField& field,
                                    const QuadratureRule& rule);
double divergence_identity_residual(const SystemSpec& system, const QuadratureRule& rule);

// Residuals of a static trial against a dead load: equilibrium (finite-difference |Div P| at
// interior samples), neumann, contact_traction_sign, action_reaction (pointwise nominal tractions
// on the contact plane) and constraint.
struct StaticTolerances {
  double equilibrium = 1e-6;
  double neumann = 1e-9;
  double traction_sign = 1e-10;
  double action_reaction = 1e-9;
  double constraint = 1e-9;
};
AdmissibilityReport check_static_field(const StaticField& field, const DeadLoad& load, double g,
                                       const StaticTolerances& tol = {});

struct EnergyEnclosure {
  double e_complementary = 0.0;
  double e_potential = 0.0;
  double gap = 0.0;
};

inline constexpr double kEnclosureTolerance = 1e-9;

// Throws InadmissibleTrial naming the first failing residual of either trial.
EnergyEnclosure enclosure(const SystemSpec& kinematic, const StaticField& field,
                          const DeadLoad& load, const QuadratureRule& rule,
                          const Tolerances& ktol = {}, const StaticTolerances& stol = {});
// The static system must be admissible for the nominal load tau; its own tractions give the
// dead load on the lateral faces.
EnergyEnclosure enclosure(const SystemSpec& kinematic, const SystemSpec& static_system, double tau,
                          const QuadratureRule& rule, const Tolerances& tol = {});

}  // namespace cbounds
