#include "contact_bounds/trials.hpp"

#include <algorithm>
#include <cmath>

#include "contact_bounds/error.hpp"

namespace cbounds {

namespace {

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw Error(ErrorCode::InvalidParameters, std::string(what) + " must be positive");
  }
}

// phi and its second derivatives in the plane (X, S) with S the coordinate on `axis`.
struct AiryDerivs {
  double xx = 0.0, ss = 0.0, xs = 0.0;
};

AiryDerivs airy_derivs(const AiryMode& m, double x0, double x1, double s0, double s1, double X,
                       double S) {
  const double u = (X - x0) * (x1 - X), du = x1 + x0 - 2.0 * X;
  const double v = (S - s0) * (s1 - S), dv = s1 + s0 - 2.0 * S;
  const double U = u * u, dU = 2.0 * u * du, ddU = 2.0 * du * du - 4.0 * u;
  const double V = v * v, dV = 2.0 * v * dv, ddV = 2.0 * dv * dv - 4.0 * v;
  const double psi = m.c0 + m.c1 * X + m.c2 * S;
  AiryDerivs d;
  d.xx = m.kappa * (ddU * V * psi + 2.0 * dU * V * m.c1);
  d.ss = m.kappa * (U * ddV * psi + 2.0 * U * dV * m.c2);
  d.xs = m.kappa * (dU * dV * psi + dU * V * m.c2 + U * dV * m.c1);
  return d;
}

StaticBody perturbed(const BodySpec& body, AiryMode xy, AiryMode xz) {
  StaticBody sb;
  sb.domain = body.domain;
  sb.material = body.material;
  sb.state = [body, xy, xz](const Vec3& X) {
    const ConstitutiveState s0 = body_state(body, X);
    const Mat3 P = piola_stress(body.material, s0.F, s0.pressure) + airy_stress(body.domain, xy, xz, X);
    return invert_piola(body.material, P, s0);
  };
  return sb;
}

}  // namespace

SystemSpec exact_triaxial_state(const TriaxialCase& c, double tau) {
  require_positive(c.C1, "C1");
  require_positive(c.C2, "C2");
  require_positive(c.a1, "a1");
  require_positive(c.a2, "a2");
  if (!(c.opening >= 0.0)) throw Error(ErrorCode::InvalidParameters, "opening must be >= 0");
  SystemSpec s = default_system();
  s.g = c.g;
  s.body1.material = NeoHookeanIncompressible{c.C1};
  s.body2.material = NeoHookeanIncompressible{c.C2};
  const double Xc = contact_plane(s);
  s.body1.map = TriaxialStretch{c.a1, c.b1};
  s.body2.map = TriaxialStretch{c.a2, c.b1 + (c.a1 - c.a2) * Xc + c.opening};
  s.prescribed = s.body2.map;
  // Nominal P_11 = C a - p / a equals tau in both bodies.
  s.body1.pressure = ConstantPressure{c.a1 * (c.C1 * c.a1 - tau)};
  s.body2.pressure = ConstantPressure{c.a2 * (c.C2 * c.a2 - tau)};
  return s;
}

SystemSpec exact_bending_state(const BendingCase& c, double traction) {
  require_positive(c.C1, "C1");
  require_positive(c.C2, "C2");
  require_positive(c.A, "A");
  require_positive(c.a1, "a1");
  require_positive(c.a2, "a2");
  SystemSpec s = default_system();
  s.body1.material = NeoHookeanIncompressible{c.C1};
  s.body2.material = NeoHookeanIncompressible{c.C2};
  s.body1.map = StretchBend{c.A, c.a1, c.b1};
  const double Xc = contact_plane(s);
  s.body2.map = StretchBend{c.A, c.a2, c.b1 + 2.0 * Xc * (c.a1 - c.a2)};
  validate(s.body1.map, s.body1.domain);
  validate(s.body2.map, s.body2.domain);
  s.prescribed = s.body2.map;

  s.body1.pressure = solve_radial_pressure(s.body1, traction, RadialEnd::Outer);
  const double rc = radial_range(s.body1).second;
  // Nominal P_rr = sigma_rr r / a must match across the interface.
  const double sigma2 = traction * (rc / c.a1) * (c.a2 / rc);
  s.body2.pressure = solve_radial_pressure(s.body2, sigma2, RadialEnd::Inner);
  return s;
}

double nominal_load(const SystemSpec& state) {
  return contact_traction(state.body1, state.body1.domain.x_lo, TractionMeasure::Nominal);
}

SystemSpec kinematic_trial(const SystemSpec& exact, double da, double opening) {
  if (!(opening >= 0.0)) throw Error(ErrorCode::InvalidParameters, "opening must be >= 0");
  if (!(1.0 + da > 0.0)) throw Error(ErrorCode::InvalidParameters, "stretch factor must be positive");
  SystemSpec t = exact;
  const double Xc = contact_plane(exact);
  if (auto* m = std::get_if<TriaxialStretch>(&t.body1.map)) {
    const double xc = placement(exact.body2.map, {Xc, 0.0, 0.0})[0] + exact.d_allow;
    m->a *= 1.0 + da;
    m->b = xc - opening - m->a * Xc;
  } else if (auto* b = std::get_if<StretchBend>(&t.body1.map)) {
    const double rc = bend_radius(std::get<StretchBend>(exact.body2.map), Xc) + exact.d_allow;
    b->a *= 1.0 + da;
    const double r = rc - opening;
    b->b = r * r - 2.0 * b->a * Xc;
    validate(t.body1.map, t.body1.domain);
  } else {
    throw Error(ErrorCode::FamilyMismatch, "kinematic trials need a parametric family");
  }
  return t;
}

SystemSpec random_kinematic_trial(const SystemSpec& exact, std::mt19937_64& rng, double max_da,
                                  double max_opening) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double da = max_da * u(rng);
  const double opening = max_opening * 0.5 * (1.0 + u(rng));
  return kinematic_trial(exact, da, opening);
}

Mat3 airy_stress(const Box3& d, const AiryMode& xy, const AiryMode& xz, const Vec3& X) {
  const AiryDerivs a = airy_derivs(xy, d.x_lo, d.x_hi, d.y_lo, d.y_hi, X[0], X[1]);
  const AiryDerivs b = airy_derivs(xz, d.x_lo, d.x_hi, d.z_lo, d.z_hi, X[0], X[2]);
  Mat3 P;
  P(0, 0) = a.ss + b.ss;
  P(0, 1) = -a.xs;
  P(1, 0) = -a.xs;
  P(1, 1) = a.xx;
  P(0, 2) = -b.xs;
  P(2, 0) = -b.xs;
  P(2, 2) = b.xx;
  return P;
}

StaticPerturbation random_static_perturbation(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // kappa / 32 is the peak stress scale of a unit mode on the half-slab.
  auto mode = [&]() { return AiryMode{32.0 * scale * u(rng), 1.0, u(rng), u(rng)}; };
  StaticPerturbation p;
  p.xy1 = mode();
  p.xz1 = mode();
  p.xy2 = mode();
  p.xz2 = mode();
  return p;
}

StaticField static_trial(const SystemSpec& exact, const StaticPerturbation& pert) {
  return {perturbed(exact.body1, pert.xy1, pert.xz1), perturbed(exact.body2, pert.xy2, pert.xz2)};
}

const char* to_string(TrialFamily f) {
  switch (f) {
    case TrialFamily::Frictionless: return "frictionless";
    case TrialFamily::Cohesive: return "cohesive";
    case TrialFamily::Bending: return "bending";
  }
  return "?";
}

bool within_pressure_window(const SystemSpec& state) {
  for (const BodySpec* b : {&state.body1, &state.body2}) {
    const double window = shear_constant(b->material) / max_principal_stretch(b->map, b->domain);
    if (std::holds_alternative<RadialPressureProfile>(b->pressure)) {
      const auto [r0, r1] = radial_range(*b);
      for (int k = 0; k <= 32; ++k) {
        if (std::abs(pressure_at(b->pressure, r0 + (r1 - r0) * k / 32.0)) >= window) return false;
      }
    } else if (std::abs(pressure_at(b->pressure, 0.0)) >= window) {
      return false;
    }
  }
  return true;
}

SystemSpec random_exact_state(TrialFamily family, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SystemSpec s;
    const double C1 = 0.5 + 2.5 * u(rng), C2 = 0.5 + 2.5 * u(rng);
    if (family == TrialFamily::Bending) {
      const double a = 6.0 + 4.0 * u(rng), ratio = 0.75 + 0.1 * u(rng);
      const BendingCase c{C1, C2, std::sqrt(ratio / a), a, a, a * a / (ratio * ratio)};
      s = exact_bending_state(c, -0.2 * std::min(C1, C2) * u(rng));
    } else {
      TriaxialCase c{C1, 0.5 + 0.49 * u(rng), C2, 0.5 + 0.49 * u(rng), u(rng) - 0.5};
      double tau = -0.3 * u(rng);
      if (family == TrialFamily::Cohesive) {
        c.g = 0.1 + 1.9 * u(rng);
        tau = std::min(-0.3 + 0.6 * u(rng), c.g);
      }
      s = exact_triaxial_state(c, tau);
    }
    if (within_pressure_window(s)) return s;
  }
  throw Error(ErrorCode::InfeasibleProblem, "no exact state inside the pressure window");
}

}  // namespace cbounds
