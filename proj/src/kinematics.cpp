#include "contact_bounds/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
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

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameters, what);
}

void require_in(const Box3& domain, const Vec3& X) {
  if (!domain.contains(X, kDomainTolerance)) {
    throw Error(ErrorCode::OutOfDomain, "X = (" + std::to_string(X[0]) + ", " +
                                            std::to_string(X[1]) + ", " + std::to_string(X[2]) +
                                            ") outside body");
  }
}

double radius_squared(const StretchBend& m, double X) { return 2.0 * m.a * X + m.b; }

}  // namespace

const char* family_name(const DeformationMap& map) {
  return std::visit(overloaded{[](const TriaxialStretch&) { return "triaxial"; },
                               [](const StretchBend&) { return "bending"; },
                               [](const Homogeneous&) { return "homogeneous"; }},
                    map);
}

bool same_family(const DeformationMap& a, const DeformationMap& b) {
  return a.index() == b.index();
}

bool is_isochoric(const DeformationMap& map, double tol) {
  if (const auto* h = std::get_if<Homogeneous>(&map)) return std::abs(det(h->F0) - 1.0) <= tol;
  return true;
}

void validate(const DeformationMap& map) {
  std::visit(overloaded{
                 [](const TriaxialStretch& m) {
                   require(std::isfinite(m.a) && m.a > 0.0, "stretch a must be positive");
                   require(std::isfinite(m.b), "translation b must be finite");
                 },
                 [](const StretchBend& m) {
                   require(std::isfinite(m.A) && m.A > 0.0, "bending A must be positive");
                   require(std::isfinite(m.a) && m.a > 0.0, "bending a must be positive");
                   require(std::isfinite(m.b), "bending b must be finite");
                 },
                 [](const Homogeneous& m) {
                   require(is_finite(m.F0) && is_finite(m.t), "homogeneous map must be finite");
                   if (!(det(m.F0) > 0.0)) {
                     throw Error(ErrorCode::NonPositiveJacobian,
                                 "det F0 = " + std::to_string(det(m.F0)));
                   }
                 }},
             map);
}

void validate(const DeformationMap& map, const Box3& domain) {
  domain.validate();
  validate(map);
  if (const auto* m = std::get_if<StretchBend>(&map)) {
    require(radius_squared(*m, domain.x_lo) >= kMinRadius * kMinRadius,
            "bending radius must stay positive: 2 a X + b >= r_min^2 on the body");
  }
}

double bend_radius(const StretchBend& m, double X) {
  const double r2 = radius_squared(m, X);
  if (!(r2 >= kMinRadius * kMinRadius)) {
    throw Error(ErrorCode::OutOfDomain, "bending radius below r_min at X = " + std::to_string(X));
  }
  return std::sqrt(r2);
}

Mat3 deformation_gradient(const DeformationMap& map, const Vec3& X) {
  return std::visit(overloaded{[](const TriaxialStretch& m) {
                                 const double s = 1.0 / std::sqrt(m.a);
                                 return Mat3::diag(m.a, s, s);
                               },
                               [&X](const StretchBend& m) {
                                 const double r = bend_radius(m, X[0]);
                                 const double sa = std::sqrt(m.a);
                                 return Mat3::diag(m.a / r, m.A * r / sa, 1.0 / (m.A * sa));
                               },
                               [](const Homogeneous& m) { return m.F0; }},
                    map);
}

Mat3 deformation_gradient(const DeformationMap& map, const Vec3& X, const Box3& domain) {
  require_in(domain, X);
  return deformation_gradient(map, X);
}

Mat3 principal_frame(const DeformationMap& map, const Vec3& X) {
  if (const auto* m = std::get_if<StretchBend>(&map)) {
    return rotation_z(m->A * X[1] / std::sqrt(m->a));
  }
  return Mat3::identity();
}

Mat3 cartesian_gradient(const DeformationMap& map, const Vec3& X) {
  return principal_frame(map, X) * deformation_gradient(map, X);
}

Vec3 placement(const DeformationMap& map, const Vec3& X) {
  return std::visit(overloaded{[&X](const TriaxialStretch& m) {
                                 const double s = 1.0 / std::sqrt(m.a);
                                 return Vec3{m.a * X[0] + m.b, X[1] * s, X[2] * s};
                               },
                               [&X](const StretchBend& m) {
                                 const double r = bend_radius(m, X[0]);
                                 const double sa = std::sqrt(m.a);
                                 const double theta = m.A * X[1] / sa;
                                 return Vec3{r * std::cos(theta), r * std::sin(theta),
                                             X[2] / (m.A * sa)};
                               },
                               [&X](const Homogeneous& m) { return m.F0 * X + m.t; }},
                    map);
}

Vec3 displacement(const DeformationMap& map, const Vec3& X) { return placement(map, X) - X; }

Vec3 displacement(const DeformationMap& map, const Vec3& X, const Box3& domain) {
  require_in(domain, X);
  return displacement(map, X);
}

StretchTriple principal_stretches(const DeformationMap& map, const Vec3& X) {
  if (const auto* h = std::get_if<Homogeneous>(&map)) {
    auto ev = sym_eigenvalues(transpose(h->F0) * h->F0);
    return {std::sqrt(std::max(ev[0], 0.0)), std::sqrt(std::max(ev[1], 0.0)),
            std::sqrt(std::max(ev[2], 0.0))};
  }
  const Mat3 F = deformation_gradient(map, X);
  return {F(0, 0), F(1, 1), F(2, 2)};
}

StretchTriple principal_stretches(const DeformationMap& map, const Vec3& X, const Box3& domain) {
  require_in(domain, X);
  return principal_stretches(map, X);
}

double jacobian(const DeformationMap& map, const Vec3& X) {
  const double J = det(deformation_gradient(map, X));
  if (!(J > 0.0)) throw Error(ErrorCode::NonPositiveJacobian, "J = " + std::to_string(J));
  return J;
}

double image_volume(const DeformationMap& map, const Box3& domain) {
  validate(map, domain);
  return std::visit(
      overloaded{[&domain](const TriaxialStretch&) { return domain.volume(); },
                 [&domain](const StretchBend& m) {
                   const double sa = std::sqrt(m.a);
                   const double r2_lo = radius_squared(m, domain.x_lo);
                   const double r2_hi = radius_squared(m, domain.x_hi);
                   // A sector wider than a full turn overlaps itself.
                   const double dtheta = std::min(m.A * (domain.y_hi - domain.y_lo) / sa,
                                                  2.0 * std::numbers::pi);
                   const double dz = (domain.z_hi - domain.z_lo) / (m.A * sa);
                   return 0.5 * (r2_hi - r2_lo) * dtheta * dz;
                 },
                 [&domain](const Homogeneous& m) { return std::abs(det(m.F0)) * domain.volume(); }},
      map);
}

InjectivityResult injectivity_report(const DeformationMap& map, const Box3& domain,
                                     int quad_order, double tol) {
  if (quad_order < 2) throw Error(ErrorCode::InvalidParameters, "quad_order must be >= 2");
  validate(map, domain);
  const QuadratureRule rule(quad_order);
  InjectivityResult out;
  out.jacobian_integral =
      integrate_volume([&map](const Vec3& X) { return jacobian(map, X); }, domain, rule);
  out.image_volume = image_volume(map, domain);
  out.injective = out.jacobian_integral <= out.image_volume + tol;
  return out;
}

bool injectivity_check(const DeformationMap& map, const Box3& domain, int quad_order) {
  return injectivity_report(map, domain, quad_order).injective;
}

double max_principal_stretch(const DeformationMap& map, const Box3& domain) {
  validate(map, domain);
  return std::visit(overloaded{[](const TriaxialStretch& m) {
                                 return std::max(m.a, 1.0 / std::sqrt(m.a));
                               },
                               [&domain](const StretchBend& m) {
                                 const double sa = std::sqrt(m.a);
                                 const double r_in = bend_radius(m, domain.x_lo);
                                 const double r_out = bend_radius(m, domain.x_hi);
                                 return std::max({m.a / r_in, m.A * r_out / sa, 1.0 / (m.A * sa)});
                               },
                               [](const Homogeneous& m) {
                                 return std::sqrt(sym_eigenvalues(transpose(m.F0) * m.F0)[0]);
                               }},
                    map);
}

}  // namespace cbounds
