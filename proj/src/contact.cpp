#include "contact_bounds/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contact_bounds/error.hpp"

namespace cbounds {

namespace {

constexpr int kSampleGrid = 5;

template <class Fn>
double max_over_samples(const Box3& d, Fn&& fn) {
  double worst = 0.0;
  for (int i = 0; i < kSampleGrid; ++i) {
    for (int j = 0; j < kSampleGrid; ++j) {
      for (int k = 0; k < kSampleGrid; ++k) {
        const Vec3 X{d.x_lo + (i + 0.5) / kSampleGrid * (d.x_hi - d.x_lo),
                     d.y_lo + (j + 0.5) / kSampleGrid * (d.y_hi - d.y_lo),
                     d.z_lo + (k + 0.5) / kSampleGrid * (d.z_hi - d.z_lo)};
        worst = std::max(worst, fn(X));
      }
    }
  }
  return worst;
}

Vec3 face_center(const Box3& d, double X_face) {
  return {X_face, 0.5 * (d.y_lo + d.y_hi), 0.5 * (d.z_lo + d.z_hi)};
}

const StretchBend& require_bending(const BodySpec& body) {
  const auto* m = std::get_if<StretchBend>(&body.map);
  if (!m) throw Error(ErrorCode::FamilyMismatch, "operation needs the bending family");
  return *m;
}

double constraint_residual(const BodySpec& body) {
  if (!is_incompressible(body.material)) return 0.0;
  return max_over_samples(body.domain, [&](const Vec3& X) {
    return std::abs(det(deformation_gradient(body.map, X)) - 1.0);
  });
}

double equilibrium_residual(const BodySpec& body) {
  if (std::holds_alternative<StretchBend>(body.map)) {
    const auto& m = std::get<StretchBend>(body.map);
    return max_over_samples(body.domain, [&](const Vec3& X) {
      return std::abs(radial_equilibrium_residual(body, bend_radius(m, X[0])));
    });
  }
  // Affine families with uniform pressure carry a uniform stress.
  if (!std::holds_alternative<ConstantPressure>(body.pressure)) {
    throw Error(ErrorCode::FamilyMismatch, "radial pressure profile on a non-bending body");
  }
  return 0.0;
}

}  // namespace

SystemSpec default_system() {
  SystemSpec s;
  s.body1.domain = kBody1Domain;
  s.body2.domain = kBody2Domain;
  return s;
}

const char* to_string(Regime r) { return r == Regime::Closed ? "closed" : "open"; }

void validate(const BodySpec& body) {
  validate(body.material);
  validate(body.pressure);
  validate(body.map, body.domain);
  if (is_incompressible(body.material) && !is_isochoric(body.map, kIncompressibilityTolerance)) {
    throw Error(ErrorCode::ConstraintViolated, "incompressible body needs an isochoric map");
  }
  if (std::holds_alternative<RadialPressureProfile>(body.pressure) &&
      !std::holds_alternative<StretchBend>(body.map)) {
    throw Error(ErrorCode::FamilyMismatch, "radial pressure profile on a non-bending body");
  }
}

void validate(const SystemSpec& system) {
  validate(system.body1);
  validate(system.body2);
  validate(system.prescribed);
  if (system.body1.domain.x_hi != system.body2.domain.x_lo) {
    throw Error(ErrorCode::InvalidParameters, "bodies must share the contact plane");
  }
  if (!(std::isfinite(system.d_allow) && system.d_allow >= 0.0)) {
    throw Error(ErrorCode::InvalidParameters, "d_allow must be >= 0");
  }
  if (!(std::isfinite(system.g) && system.g >= 0.0)) {
    throw Error(ErrorCode::InvalidParameters, "g must be >= 0");
  }
  if (!std::isfinite(system.dirichlet_offset)) {
    throw Error(ErrorCode::InvalidParameters, "dirichlet_offset must be finite");
  }
  if (!same_family(system.body1.map, system.body2.map)) {
    throw Error(ErrorCode::FamilyMismatch, "bodies use different deformation families");
  }
}

double pressure_at(const BodySpec& body, const Vec3& X) {
  if (const auto* c = std::get_if<ConstantPressure>(&body.pressure)) return c->p;
  const auto& m = require_bending(body);
  return pressure_at(body.pressure, bend_radius(m, X[0]));
}

ConstitutiveState body_state(const BodySpec& body, const Vec3& X) {
  return {cartesian_gradient(body.map, X), pressure_at(body, X)};
}

Mat3 cartesian_piola(const BodySpec& body, const Vec3& X) {
  const auto s = body_state(body, X);
  return piola_stress(body.material, s.F, s.pressure);
}

double contact_plane(const SystemSpec& system) { return system.body1.domain.x_hi; }

double gap_value(const SystemSpec& system) {
  const auto& m1 = system.body1.map;
  const auto& m2 = system.body2.map;
  if (!same_family(m1, m2)) {
    throw Error(ErrorCode::FamilyMismatch, std::string("gap between ") + family_name(m1) +
                                               " and " + family_name(m2) + " bodies");
  }
  const double Xc = contact_plane(system);
  if (const auto* b1 = std::get_if<StretchBend>(&m1)) {
    return bend_radius(*b1, Xc) - bend_radius(std::get<StretchBend>(m2), Xc);
  }
  if (std::holds_alternative<TriaxialStretch>(m1)) {
    const Vec3 X = face_center(system.body1.domain, Xc);
    return placement(m1, X)[0] - placement(m2, X)[0];
  }
  // Homogeneous pair: worst separation over a face grid.
  const Box3& d = system.body1.domain;
  double worst = -1e300;
  for (int j = 0; j <= kSampleGrid; ++j) {
    for (int k = 0; k <= kSampleGrid; ++k) {
      const Vec3 X{Xc, d.y_lo + j * (d.y_hi - d.y_lo) / kSampleGrid,
                   d.z_lo + k * (d.z_hi - d.z_lo) / kSampleGrid};
      worst = std::max(worst, placement(m1, X)[0] - placement(m2, X)[0]);
    }
  }
  return worst;
}

double contact_traction(const BodySpec& body, double X_face, TractionMeasure measure) {
  const Vec3 X = face_center(body.domain, X_face);
  const Mat3 F = deformation_gradient(body.map, X);
  const double p = pressure_at(body, X);
  if (measure == TractionMeasure::Cauchy) return cauchy_stress(body.material, F, p)(0, 0);
  return piola_stress(body.material, F, p)(0, 0);
}

double contact_traction_at_radius(const BodySpec& body, double r) {
  const auto& m = require_bending(body);
  const double C = shear_constant(body.material);
  const double p = is_incompressible(body.material) ? pressure_at(body.pressure, r) : 0.0;
  return -p + C * m.a * m.a / (r * r);
}

ContactEvaluation evaluate_contact(const SystemSpec& system, TractionMeasure measure,
                                   const Tolerances& tol) {
  ContactEvaluation ev;
  const double Xc = contact_plane(system);
  ev.gap = gap_value(system) - system.d_allow;
  ev.traction_normal = contact_traction(system.body1, Xc, measure);
  ev.traction_body2 = contact_traction(system.body2, Xc, measure);
  ev.complementarity_residual = ev.gap * (ev.traction_normal - system.g);
  ev.action_reaction_residual = std::abs(ev.traction_normal - ev.traction_body2);
  ev.regime = std::abs(ev.gap) <= tol.gap ? Regime::Closed : Regime::Open;
  return ev;
}

Vec3 dirichlet_placement(const SystemSpec& system, const Vec3& X) {
  return placement(system.prescribed, X) + Vec3{system.dirichlet_offset, 0.0, 0.0};
}

AdmissibilityReport check_kinematic(const SystemSpec& system, const Tolerances& tol,
                                    int quad_order) {
  AdmissibilityReport rep;
  const Box3& d2 = system.body2.domain;
  const QuadratureRule rule(quad_order);
  double dir = 0.0;
  for (const auto& [y, wy] : rule.on_interval(d2.y_lo, d2.y_hi)) {
    (void)wy;
    for (const auto& [z, wz] : rule.on_interval(d2.z_lo, d2.z_hi)) {
      (void)wz;
      const Vec3 X{d2.x_hi, y, z};
      dir = std::max(dir, norm(placement(system.body2.map, X) - dirichlet_placement(system, X)));
    }
  }
  rep.residuals["dirichlet"] = dir;
  rep.residuals["gap"] = std::max(0.0, gap_value(system) - system.d_allow);
  rep.residuals["constraint"] =
      std::max(constraint_residual(system.body1), constraint_residual(system.body2));
  rep.kinematic_ok = rep.residuals["dirichlet"] <= tol.dirichlet &&
                     rep.residuals["gap"] <= tol.gap &&
                     rep.residuals["constraint"] <= tol.constraint;
  rep.static_ok = false;
  return rep;
}

AdmissibilityReport check_static(const SystemSpec& system, double tau, TractionMeasure measure,
                                 const Tolerances& tol) {
  AdmissibilityReport rep;
  const auto ev = evaluate_contact(system, measure, tol);
  rep.residuals["equilibrium"] =
      std::max(equilibrium_residual(system.body1), equilibrium_residual(system.body2));
  rep.residuals["neumann"] =
      std::abs(contact_traction(system.body1, system.body1.domain.x_lo, measure) - tau);
  double sign = std::max({0.0, ev.traction_normal - system.g, ev.traction_body2 - system.g});
  if (ev.regime == Regime::Open) {
    // A separated interface carries exactly the cohesive traction.
    sign = std::max({sign, std::abs(ev.traction_normal - system.g),
                     std::abs(ev.traction_body2 - system.g)});
  }
  rep.residuals["contact_traction_sign"] = sign;
  rep.residuals["action_reaction"] = ev.action_reaction_residual;
  rep.residuals["constraint"] =
      std::max(constraint_residual(system.body1), constraint_residual(system.body2));
  rep.static_ok = rep.residuals["equilibrium"] <= tol.equilibrium &&
                  rep.residuals["neumann"] <= tol.neumann &&
                  rep.residuals["contact_traction_sign"] <= tol.traction_sign &&
                  rep.residuals["action_reaction"] <= tol.action_reaction &&
                  rep.residuals["constraint"] <= tol.constraint;
  rep.kinematic_ok = false;
  return rep;
}

double radial_equilibrium_residual(const BodySpec& body, double r) {
  const auto& m = require_bending(body);
  const double C = shear_constant(body.material);
  const bool inc = is_incompressible(body.material);
  const double p = inc ? pressure_at(body.pressure, r) : 0.0;
  const double dp = inc ? pressure_slope_at(body.pressure, r) : 0.0;
  const double a2 = m.a * m.a;
  const double s_rr = C * a2 / (r * r) - p;
  const double s_tt = C * m.A * m.A * r * r / m.a - p;
  const double ds_rr = -2.0 * C * a2 / (r * r * r) - dp;
  return ds_rr - (s_tt - s_rr) / r;
}

std::pair<double, double> radial_range(const BodySpec& body) {
  const auto& m = require_bending(body);
  return {bend_radius(m, body.domain.x_lo), bend_radius(m, body.domain.x_hi)};
}

PressureField solve_radial_pressure(const BodySpec& body, double boundary_traction, RadialEnd end,
                                    int nodes) {
  const auto& m = require_bending(body);
  if (!is_incompressible(body.material)) {
    throw Error(ErrorCode::InvalidParameters, "pressure profile needs the incompressible model");
  }
  if (nodes < 2) throw Error(ErrorCode::InvalidParameters, "profile needs >= 2 nodes");
  if (!std::isfinite(boundary_traction)) {
    throw Error(ErrorCode::InvalidParameters, "boundary traction must be finite");
  }
  validate(body.map, body.domain);
  const double C = shear_constant(body.material);
  const auto [r_lo, r_hi] = radial_range(body);
  const auto n = static_cast<std::size_t>(nodes);

  // d sigma_rr / dr = (sigma_tt - sigma_rr) / r
  auto slope = [&](double r) { return C * (m.A * m.A * r / m.a - m.a * m.a / (r * r * r)); };

  RadialPressureProfile prof;
  prof.r.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    prof.r[k] = r_lo + (r_hi - r_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  prof.r.back() = r_hi;

  std::vector<double> sigma(n);
  const QuadratureRule rule(kDefaultQuadOrder);
  auto segment = [&](double lo, double hi) {
    double s = 0.0;
    for (const auto& [r, w] : rule.on_interval(lo, hi)) s += w * slope(r);
    return s;
  };
  if (end == RadialEnd::Inner) {
    sigma[0] = boundary_traction;
    for (std::size_t k = 1; k < n; ++k) sigma[k] = sigma[k - 1] + segment(prof.r[k - 1], prof.r[k]);
  } else {
    sigma[n - 1] = boundary_traction;
    for (std::size_t k = n - 1; k > 0; --k) sigma[k - 1] = sigma[k] - segment(prof.r[k - 1], prof.r[k]);
  }

  prof.p.resize(n);
  prof.dp_dr.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = prof.r[k];
    // sigma_rr = C a^2 / r^2 - p
    prof.p[k] = C * m.a * m.a / (r * r) - sigma[k];
    prof.dp_dr[k] = -2.0 * C * m.a * m.a / (r * r * r) - slope(r);
  }
  return prof;
}

}  // namespace cbounds
