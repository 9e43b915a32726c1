#include "contact_bounds/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contact_bounds/error.hpp"

namespace cbounds {

namespace {

const BodySpec& body_of(const SystemSpec& s, int b) { return b == 1 ? s.body1 : s.body2; }
const StaticBody& body_of(const StaticField& f, int b) { return b == 1 ? f.body1 : f.body2; }

StaticBody static_body_of(const BodySpec& body) {
  return {body.domain, body.material, [body](const Vec3& X) { return body_state(body, X); }};
}

double strain_energy_of(const BodySpec& body, const QuadratureRule& rule) {
  return integrate_volume(
      [&](const Vec3& X) { return strain_energy(body.material, cartesian_gradient(body.map, X)); },
      body.domain, rule);
}

double complementary_of(const StaticBody& body, const QuadratureRule& rule) {
  return integrate_volume(
      [&](const Vec3& X) {
        const auto s = body.state(X);
        return complementary_density(body.material, s.F, s.pressure);
      },
      body.domain, rule);
}

// Evaluates fn at a 5x5x5 interior grid and returns the largest value.
template <class Fn>
double max_interior(const Box3& d, Fn&& fn) {
  constexpr int n = 5;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec3 X{d.x_lo + (i + 0.5) / n * (d.x_hi - d.x_lo),
                     d.y_lo + (j + 0.5) / n * (d.y_hi - d.y_lo),
                     d.z_lo + (k + 0.5) / n * (d.z_hi - d.z_lo)};
        worst = std::max(worst, fn(X));
      }
    }
  }
  return worst;
}

// Applies fn at every Gauss node of a face and returns the largest value.
template <class Fn>
double max_on_face(const Box3& d, Face face, const QuadratureRule& rule, Fn&& fn) {
  double worst = 0.0;
  (void)integrate_face(
      [&](const Vec3& X) {
        worst = std::max(worst, fn(X));
        return 0.0;
      },
      d, face, rule);
  return worst;
}

double divergence_norm(const StaticBody& body, const Vec3& X) {
  const Box3& d = body.domain;
  const double h = 1e-4 * std::min({d.x_hi - d.x_lo, d.y_hi - d.y_lo, d.z_hi - d.z_lo});
  Vec3 div;
  for (int J = 0; J < 3; ++J) {
    Vec3 Xp = X, Xm = X;
    Xp[J] += h;
    Xm[J] -= h;
    const Mat3 dP = (piola_at(body, Xp) - piola_at(body, Xm)) * (0.5 / h);
    for (int i = 0; i < 3; ++i) div[i] += dP(i, J);
  }
  return norm(div);
}

}  // namespace

StaticField static_field_of(const SystemSpec& system) {
  return {static_body_of(system.body1), static_body_of(system.body2)};
}

Mat3 piola_at(const StaticBody& body, const Vec3& X) {
  const auto s = body.state(X);
  return piola_stress(body.material, s.F, s.pressure);
}

const std::vector<BodyFace>& neumann_faces() {
  static const std::vector<BodyFace> faces{
      {1, Face::XLo}, {1, Face::YLo}, {1, Face::YHi}, {1, Face::ZLo}, {1, Face::ZHi},
      {2, Face::YLo}, {2, Face::YHi}, {2, Face::ZLo}, {2, Face::ZHi}};
  return faces;
}

DeadLoad normal_dead_load(double tau) {
  return {[tau](int body, Face face, const Vec3&) {
    if (body == 1 && face == Face::XLo) return outward_normal(face) * tau;
    return Vec3{};
  }};
}

DeadLoad dead_load_of(const StaticField& field) {
  return {[field](int body, Face face, const Vec3& X) {
    return piola_at(body_of(field, body), X) * outward_normal(face);
  }};
}

double potential_energy(const SystemSpec& system, const DeadLoad& load, const QuadratureRule& rule) {
  double e = strain_energy_of(system.body1, rule) + strain_energy_of(system.body2, rule);
  for (const auto& bf : neumann_faces()) {
    const BodySpec& body = body_of(system, bf.body);
    e -= integrate_face(
        [&](const Vec3& X) { return dot(load.traction(bf.body, bf.face, X), placement(body.map, X)); },
        body.domain, bf.face, rule);
  }
  if (system.g > 0.0) {
    // Opening the interface works against the cohesive traction g.
    const double area = face_area(system.body1.domain, Face::XHi);
    e += system.g * (system.d_allow - gap_value(system)) * area;
  }
  return e;
}

double potential_energy(const SystemSpec& system, double tau, const QuadratureRule& rule) {
  return potential_energy(system, normal_dead_load(tau), rule);
}

double complementary_energy(const StaticField& field, const SystemSpec& dirichlet,
                            const QuadratureRule& rule) {
  const StaticBody& b2 = field.body2;
  const Vec3 N = outward_normal(Face::XHi);
  const double boundary = integrate_face(
      [&](const Vec3& X) { return dot(piola_at(b2, X) * N, dirichlet_placement(dirichlet, X)); },
      b2.domain, Face::XHi, rule);
  return boundary - complementary_of(field.body1, rule) - complementary_of(field.body2, rule);
}

double complementary_energy(const SystemSpec& system, const QuadratureRule& rule) {
  return complementary_energy(static_field_of(system), system, rule);
}

double divergence_identity_residual(const SystemSpec& kinematic, const StaticField& field,
                                    const QuadratureRule& rule) {
  double total = 0.0;
  for (int b = 1; b <= 2; ++b) {
    const StaticBody& sb = body_of(field, b);
    const DeformationMap& map = body_of(kinematic, b).map;
    double surface = 0.0;
    for (Face f : kAllFaces) {
      const Vec3 N = outward_normal(f);
      surface += integrate_face(
          [&](const Vec3& X) { return dot(piola_at(sb, X) * N, placement(map, X)); }, sb.domain, f,
          rule);
    }
    const double volume = integrate_volume(
        [&](const Vec3& X) { return ddot(piola_at(sb, X), cartesian_gradient(map, X)); }, sb.domain,
        rule);
    total += std::abs(surface - volume);
  }
  return total;
}

double divergence_identity_residual(const SystemSpec& system, const QuadratureRule& rule) {
  return divergence_identity_residual(system, static_field_of(system), rule);
}

AdmissibilityReport check_static_field(const StaticField& field, const DeadLoad& load, double g,
                                       const StaticTolerances& tol) {
  AdmissibilityReport rep;
  rep.kinematic_ok = false;
  const QuadratureRule rule(4);

  double eq = 0.0, con = 0.0;
  for (int b = 1; b <= 2; ++b) {
    const StaticBody& sb = body_of(field, b);
    eq = std::max(eq, max_interior(sb.domain, [&](const Vec3& X) { return divergence_norm(sb, X); }));
    if (is_incompressible(sb.material)) {
      con = std::max(con, max_interior(sb.domain, [&](const Vec3& X) {
                       return std::abs(det(sb.state(X).F) - 1.0);
                     }));
    }
  }

  double neu = 0.0;
  for (const auto& bf : neumann_faces()) {
    const StaticBody& sb = body_of(field, bf.body);
    const Vec3 N = outward_normal(bf.face);
    neu = std::max(neu, max_on_face(sb.domain, bf.face, rule, [&](const Vec3& X) {
                     return norm(piola_at(sb, X) * N - load.traction(bf.body, bf.face, X));
                   }));
  }

  // Contact plane: reference normals are opposite, so action-reaction is P1 e_x = P2 e_x.
  const Vec3 ex{1.0, 0.0, 0.0};
  double ar = 0.0, sign = 0.0;
  (void)max_on_face(field.body1.domain, Face::XHi, rule, [&](const Vec3& X) {
    const auto s1 = field.body1.state(X);
    const Vec3 t1 = piola_stress(field.body1.material, s1.F, s1.pressure) * ex;
    const Vec3 t2 = piola_at(field.body2, X) * ex;
    ar = std::max(ar, norm(t1 - t2));
    Vec3 n = cofactor(s1.F) * ex;
    n *= 1.0 / norm(n);
    sign = std::max(sign, dot(t1, n) - g);
    return 0.0;
  });

  rep.residuals["equilibrium"] = eq;
  rep.residuals["neumann"] = neu;
  rep.residuals["contact_traction_sign"] = std::max(0.0, sign);
  rep.residuals["action_reaction"] = ar;
  rep.residuals["constraint"] = con;
  rep.static_ok = eq <= tol.equilibrium && neu <= tol.neumann &&
                  rep.residuals["contact_traction_sign"] <= tol.traction_sign &&
                  ar <= tol.action_reaction && con <= tol.constraint;
  return rep;
}

namespace {

[[noreturn]] void inadmissible(const char* which, const AdmissibilityReport& rep,
                               const std::map<std::string, double>& limits) {
  for (const auto& [name, value] : rep.residuals) {
    auto it = limits.find(name);
    if (it != limits.end() && value > it->second) {
      throw Error(ErrorCode::InadmissibleTrial,
                  std::string(which) + " trial: " + name + " residual " + std::to_string(value));
    }
  }
  throw Error(ErrorCode::InadmissibleTrial, std::string(which) + " trial rejected");
}

}  // namespace

EnergyEnclosure enclosure(const SystemSpec& kinematic, const StaticField& field,
                          const DeadLoad& load, const QuadratureRule& rule, const Tolerances& ktol,
                          const StaticTolerances& stol) {
  const auto krep = check_kinematic(kinematic, ktol, rule.order());
  if (!krep.kinematic_ok) {
    inadmissible("kinematic", krep,
                 {{"dirichlet", ktol.dirichlet}, {"gap", ktol.gap}, {"constraint", ktol.constraint}});
  }
  const auto srep = check_static_field(field, load, kinematic.g, stol);
  if (!srep.static_ok) {
    inadmissible("static", srep,
                 {{"equilibrium", stol.equilibrium},
                  {"neumann", stol.neumann},
                  {"contact_traction_sign", stol.traction_sign},
                  {"action_reaction", stol.action_reaction},
                  {"constraint", stol.constraint}});
  }
  EnergyEnclosure out;
  out.e_potential = potential_energy(kinematic, load, rule);
  out.e_complementary = complementary_energy(field, kinematic, rule);
  out.gap = out.e_potential - out.e_complementary;
  return out;
}

EnergyEnclosure enclosure(const SystemSpec& kinematic, const SystemSpec& static_system, double tau,
                          const QuadratureRule& rule, const Tolerances& tol) {
  const auto srep = check_static(static_system, tau, TractionMeasure::Nominal, tol);
  if (!srep.static_ok) {
    inadmissible("static", srep,
                 {{"equilibrium", tol.equilibrium},
                  {"neumann", tol.neumann},
                  {"contact_traction_sign", tol.traction_sign},
                  {"action_reaction", tol.action_reaction},
                  {"constraint", tol.constraint}});
  }
  const StaticField field = static_field_of(static_system);
  return enclosure(kinematic, field, dead_load_of(field), rule, tol);
}

}  // namespace cbounds
