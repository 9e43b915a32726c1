#pragma once

#include <variant>
#include <vector>

#include "contact_bounds/tensor3.hpp"

namespace cbounds {

// W = C/2 (I1 - 3) subject to det F = 1.
struct NeoHookeanIncompressible {
  double C = 1.0;
};

// W = C/2 (I1 - 3) + D (det F - 1)^2. The pressure argument is ignored.
struct NeoHookeanCompressible {
  double C = 1.0;
  double D = 1.0;
};

using MaterialModel = std::variant<NeoHookeanIncompressible, NeoHookeanCompressible>;

// Tolerance on |det F - 1| accepted by the incompressible model.
inline constexpr double kIncompressibilityTolerance = 1e-8;

void validate(const MaterialModel& model);
double shear_constant(const MaterialModel& model);
bool is_incompressible(const MaterialModel& model);
MaterialModel scaled(const MaterialModel& model, double k);

// Hydrostatic pressure p; the constraint multiplier is lambda = -p.
struct ConstantPressure {
  double p = 0.0;
};

// Pressure sampled on a strictly increasing radial grid, with slopes dp/dr at the
// nodes; evaluated by cubic Hermite interpolation.
struct RadialPressureProfile {
  std::vector<double> r;
  std::vector<double> p;
  std::vector<double> dp_dr;
};

using PressureField = std::variant<ConstantPressure, RadialPressureProfile>;

void validate(const PressureField& field);
// For a RadialPressureProfile `radius` is the deformed radius; it is ignored for ConstantPressure.
double pressure_at(const PressureField& field, double radius);
double pressure_slope_at(const PressureField& field, double radius);
PressureField shifted(const PressureField& field, double dp);
PressureField scaled(const PressureField& field, double k);

double strain_energy(const MaterialModel& model, const Mat3& F);

// gamma(F) = det F - 1 and its derivative cof F.
double constraint_value(const Mat3& F);
Mat3 constraint_gradient(const Mat3& F);

// d^2/dt^2 det(F + t G) at t = 0, i.e. 2 F : cof G.
double det_second_variation(const Mat3& F, const Mat3& G);

// First Piola-Kirchhoff stress dW/dF + lambda cof F with lambda = -pressure.
Mat3 piola_stress(const MaterialModel& model, const Mat3& F, double pressure);
Mat3 cauchy_stress(const MaterialModel& model, const Mat3& F, double pressure);

// W_c = P : F - W.
double complementary_density(const MaterialModel& model, const Mat3& F, double pressure);

// Second variation of W + lambda gamma at F in direction G.
double hessian_quadratic_form(const MaterialModel& model, const Mat3& F, double pressure,
                              const Mat3& G);

struct ConstitutiveState {
  Mat3 F = Mat3::identity();
  double pressure = 0.0;
};

// Solves C F - p cof F = P, det F = 1 for (F, p) by Newton iteration from `guess`.
// Incompressible model only. Throws InvalidParameters when it does not converge.
ConstitutiveState invert_piola(const MaterialModel& model, const Mat3& P,
                               const ConstitutiveState& guess);

}  // namespace cbounds
