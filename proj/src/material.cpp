#include "contact_bounds/material.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "contact_bounds/error.hpp"

namespace cbounds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double checked_jacobian(const Mat3& F) {
  const double J = det(F);
  if (!(J > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "det F = " + std::to_string(J));
  return J;
}

// Hermite cell lookup: index k with r[k] <= radius <= r[k+1].
std::size_t cell_of(const RadialPressureProfile& prof, double radius) {
  const double tol = 1e-12 * std::max(1.0, std::abs(prof.r.back()));
  if (radius < prof.r.front() - tol || radius > prof.r.back() + tol) {
    throw Error(ErrorCode::OutOfDomain,
                "radius " + std::to_string(radius) + " outside pressure profile");
  }
  auto it = std::upper_bound(prof.r.begin(), prof.r.end(), radius);
  std::size_t k = it == prof.r.begin() ? 0 : static_cast<std::size_t>(it - prof.r.begin()) - 1;
  return std::min(k, prof.r.size() - 2);
}

}  // namespace

void validate(const MaterialModel& model) {
  std::visit(overloaded{[](const NeoHookeanIncompressible& m) {
                          if (!(std::isfinite(m.C) && m.C > 0.0))
                            throw Error(ErrorCode::InvalidParameters, "C must be positive");
                        },
                        [](const NeoHookeanCompressible& m) {
                          if (!(std::isfinite(m.C) && m.C > 0.0))
                            throw Error(ErrorCode::InvalidParameters, "C must be positive");
                          if (!(std::isfinite(m.D) && m.D > 0.0))
                            throw Error(ErrorCode::InvalidParameters, "D must be positive");
                        }},
             model);
}

double shear_constant(const MaterialModel& model) {
  return std::visit([](const auto& m) { return m.C; }, model);
}

bool is_incompressible(const MaterialModel& model) {
  return std::holds_alternative<NeoHookeanIncompressible>(model);
}

MaterialModel scaled(const MaterialModel& model, double k) {
  return std::visit(overloaded{[k](const NeoHookeanIncompressible& m) -> MaterialModel {
                                 return NeoHookeanIncompressible{k * m.C};
                               },
                               [k](const NeoHookeanCompressible& m) -> MaterialModel {
                                 return NeoHookeanCompressible{k * m.C, k * m.D};
                               }},
                    model);
}

void validate(const PressureField& field) {
  if (const auto* c = std::get_if<ConstantPressure>(&field)) {
    if (!std::isfinite(c->p)) throw Error(ErrorCode::InvalidParameters, "pressure must be finite");
    return;
  }
  const auto& prof = std::get<RadialPressureProfile>(field);
  if (prof.r.size() < 2 || prof.p.size() != prof.r.size() || prof.dp_dr.size() != prof.r.size()) {
    throw Error(ErrorCode::InvalidParameters, "pressure profile needs >= 2 matching samples");
  }
  for (std::size_t k = 0; k < prof.r.size(); ++k) {
    if (!std::isfinite(prof.r[k]) || !std::isfinite(prof.p[k]) || !std::isfinite(prof.dp_dr[k]))
      throw Error(ErrorCode::InvalidParameters, "pressure profile must be finite");
    if (k > 0 && !(prof.r[k] > prof.r[k - 1]))
      throw Error(ErrorCode::InvalidParameters, "pressure profile grid must increase strictly");
  }
}

double pressure_at(const PressureField& field, double radius) {
  if (const auto* c = std::get_if<ConstantPressure>(&field)) return c->p;
  const auto& prof = std::get<RadialPressureProfile>(field);
  const std::size_t k = cell_of(prof, radius);
  const double h = prof.r[k + 1] - prof.r[k];
  const double t = (radius - prof.r[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * prof.p[k] + (t3 - 2 * t2 + t) * h * prof.dp_dr[k] +
         (-2 * t3 + 3 * t2) * prof.p[k + 1] + (t3 - t2) * h * prof.dp_dr[k + 1];
}

double pressure_slope_at(const PressureField& field, double radius) {
  if (std::holds_alternative<ConstantPressure>(field)) return 0.0;
  const auto& prof = std::get<RadialPressureProfile>(field);
  const std::size_t k = cell_of(prof, radius);
  const double h = prof.r[k + 1] - prof.r[k];
  const double t = (radius - prof.r[k]) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * prof.p[k] + (-6 * t2 + 6 * t) * prof.p[k + 1]) / h +
         (3 * t2 - 4 * t + 1) * prof.dp_dr[k] + (3 * t2 - 2 * t) * prof.dp_dr[k + 1];
}

PressureField shifted(const PressureField& field, double dp) {
  if (const auto* c = std::get_if<ConstantPressure>(&field)) return ConstantPressure{c->p + dp};
  auto prof = std::get<RadialPressureProfile>(field);
  for (double& p : prof.p) p += dp;
  return prof;
}

PressureField scaled(const PressureField& field, double k) {
  if (const auto* c = std::get_if<ConstantPressure>(&field)) return ConstantPressure{k * c->p};
  auto prof = std::get<RadialPressureProfile>(field);
  for (double& p : prof.p) p *= k;
  for (double& s : prof.dp_dr) s *= k;
  return prof;
}

double strain_energy(const MaterialModel& model, const Mat3& F) {
  const double J = checked_jacobian(F);
  const double I1 = ddot(F, F);
  return std::visit(overloaded{[&](const NeoHookeanIncompressible& m) {
                                 if (std::abs(J - 1.0) > kIncompressibilityTolerance) {
                                   throw Error(ErrorCode::ConstraintViolated,
                                               "|det F - 1| = " + std::to_string(std::abs(J - 1.0)));
                                 }
                                 return 0.5 * m.C * (I1 - 3.0);
                               },
                               [&](const NeoHookeanCompressible& m) {
                                 return 0.5 * m.C * (I1 - 3.0) + m.D * (J - 1.0) * (J - 1.0);
                               }},
                    model);
}

double constraint_value(const Mat3& F) { return det(F) - 1.0; }
Mat3 constraint_gradient(const Mat3& F) { return cofactor(F); }

double det_second_variation(const Mat3& F, const Mat3& G) { return 2.0 * ddot(F, cofactor(G)); }

Mat3 piola_stress(const MaterialModel& model, const Mat3& F, double pressure) {
  const double J = checked_jacobian(F);
  return std::visit(overloaded{[&](const NeoHookeanIncompressible& m) {
                                 return m.C * F - pressure * cofactor(F);
                               },
                               [&](const NeoHookeanCompressible& m) {
                                 return m.C * F + 2.0 * m.D * (J - 1.0) * cofactor(F);
                               }},
                    model);
}

Mat3 cauchy_stress(const MaterialModel& model, const Mat3& F, double pressure) {
  const double J = checked_jacobian(F);
  return piola_stress(model, F, pressure) * transpose(F) * (1.0 / J);
}

double complementary_density(const MaterialModel& model, const Mat3& F, double pressure) {
  return ddot(piola_stress(model, F, pressure), F) - strain_energy(model, F);
}

double hessian_quadratic_form(const MaterialModel& model, const Mat3& F, double pressure,
                              const Mat3& G) {
  const double J = checked_jacobian(F);
  const double d2det = det_second_variation(F, G);
  return std::visit(overloaded{[&](const NeoHookeanIncompressible& m) {
                                 return m.C * ddot(G, G) - pressure * d2det;
                               },
                               [&](const NeoHookeanCompressible& m) {
                                 const double dJ = ddot(cofactor(F), G);
                                 return m.C * ddot(G, G) + 2.0 * m.D * (dJ * dJ + (J - 1.0) * d2det);
                               }},
                    model);
}

ConstitutiveState invert_piola(const MaterialModel& model, const Mat3& P,
                               const ConstitutiveState& guess) {
  if (!is_incompressible(model)) {
    throw Error(ErrorCode::InvalidParameters, "stress inversion needs the incompressible model");
  }
  const double C = shear_constant(model);
  ConstitutiveState s = guess;
  const double scale = std::max(1.0, frobenius_norm(P));
  for (int it = 0; it < 50; ++it) {
    const Mat3 cof = cofactor(s.F);
    const Mat3 R = C * s.F - s.pressure * cof - P;
    const double rc = det(s.F) - 1.0;
    const double res = std::max(frobenius_norm(R) / scale, std::abs(rc));
    if (res < 1e-14) return s;

    // cof is quadratic in F, so the central difference with unit step is its exact linearisation.
    Eigen::Matrix<double, 10, 10> Jm = Eigen::Matrix<double, 10, 10>::Zero();
    for (int k = 0; k < 9; ++k) {
      Mat3 H;
      H.m[static_cast<std::size_t>(k)] = 1.0;
      const Mat3 dcof = (cofactor(s.F + H) - cofactor(s.F - H)) * 0.5;
      const Mat3 col = C * H - s.pressure * dcof;
      for (int r = 0; r < 9; ++r) Jm(r, k) = col.m[static_cast<std::size_t>(r)];
      Jm(9, k) = cof.m[static_cast<std::size_t>(k)];
    }
    for (int r = 0; r < 9; ++r) Jm(r, 9) = -cof.m[static_cast<std::size_t>(r)];

    Eigen::Matrix<double, 10, 1> rhs;
    for (int r = 0; r < 9; ++r) rhs(r) = -R.m[static_cast<std::size_t>(r)];
    rhs(9) = -rc;
    const Eigen::Matrix<double, 10, 1> dx = Jm.fullPivLu().solve(rhs);
    for (int k = 0; k < 9; ++k) s.F.m[static_cast<std::size_t>(k)] += dx(k);
    s.pressure += dx(9);
    if (!is_finite(s.F) || !std::isfinite(s.pressure)) break;
  }
  const double final_res = std::max(
      frobenius_norm(C * s.F - s.pressure * cofactor(s.F) - P) / scale, std::abs(det(s.F) - 1.0));
  if (!(final_res < 1e-11)) {
    throw Error(ErrorCode::InvalidParameters, "stress inversion did not converge");
  }
  return s;
}

}  // namespace cbounds
