#include "contact_bounds/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "contact_bounds/error.hpp"

namespace cbounds {

bool Box3::contains(const Vec3& X, double tol) const {
  return X[0] >= x_lo - tol && X[0] <= x_hi + tol && X[1] >= y_lo - tol && X[1] <= y_hi + tol &&
         X[2] >= z_lo - tol && X[2] <= z_hi + tol;
}

void Box3::validate() const {
  const bool ok = std::isfinite(x_lo) && std::isfinite(x_hi) && std::isfinite(y_lo) &&
                  std::isfinite(y_hi) && std::isfinite(z_lo) && std::isfinite(z_hi) &&
                  x_lo < x_hi && y_lo < y_hi && z_lo < z_hi;
  if (!ok) throw Error(ErrorCode::InvalidParameters, "box bounds must satisfy lo < hi");
}

Vec3 outward_normal(Face face) {
  switch (face) {
    case Face::XLo: return {-1.0, 0.0, 0.0};
    case Face::XHi: return {1.0, 0.0, 0.0};
    case Face::YLo: return {0.0, -1.0, 0.0};
    case Face::YHi: return {0.0, 1.0, 0.0};
    case Face::ZLo: return {0.0, 0.0, -1.0};
    case Face::ZHi: return {0.0, 0.0, 1.0};
  }
  return {};
}

double face_area(const Box3& box, Face face) {
  switch (face) {
    case Face::XLo:
    case Face::XHi: return (box.y_hi - box.y_lo) * (box.z_hi - box.z_lo);
    case Face::YLo:
    case Face::YHi: return (box.x_hi - box.x_lo) * (box.z_hi - box.z_lo);
    case Face::ZLo:
    case Face::ZHi: return (box.x_hi - box.x_lo) * (box.y_hi - box.y_lo);
  }
  return 0.0;
}

QuadratureRule::QuadratureRule(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidParameters, "quadrature order must be >= 1");
  const int n = order;
  nodes_.resize(static_cast<std::size_t>(n));
  weights_.resize(static_cast<std::size_t>(n));
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes_[lo] = -x;
    nodes_[hi] = x;
    weights_[lo] = w;
    weights_[hi] = w;
  }
}

std::vector<std::pair<double, double>> QuadratureRule::on_interval(double lo, double hi) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(nodes_.size());
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    out.emplace_back(mid + half * nodes_[k], half * weights_[k]);
  }
  return out;
}

namespace {

double checked(double v, const Vec3& X) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFiniteIntegrand,
                "at (" + std::to_string(X[0]) + ", " + std::to_string(X[1]) + ", " +
                    std::to_string(X[2]) + ")");
  }
  return v;
}

}  // namespace

double integrate_volume(const ScalarField& fn, const Box3& domain, const QuadratureRule& rule) {
  const auto xs = rule.on_interval(domain.x_lo, domain.x_hi);
  const auto ys = rule.on_interval(domain.y_lo, domain.y_hi);
  const auto zs = rule.on_interval(domain.z_lo, domain.z_hi);
  double total = 0.0;
  for (const auto& [x, wx] : xs) {
    double sx = 0.0;
    for (const auto& [y, wy] : ys) {
      double sy = 0.0;
      for (const auto& [z, wz] : zs) {
        const Vec3 X{x, y, z};
        sy += wz * checked(fn(X), X);
      }
      sx += wy * sy;
    }
    total += wx * sx;
  }
  return total;
}

double integrate_face(const ScalarField& fn, const Box3& domain, Face face,
                      const QuadratureRule& rule) {
  // (fixed coordinate, axis of fixed coordinate, the two free axes)
  int axis = 0;
  double fixed = 0.0;
  switch (face) {
    case Face::XLo: axis = 0; fixed = domain.x_lo; break;
    case Face::XHi: axis = 0; fixed = domain.x_hi; break;
    case Face::YLo: axis = 1; fixed = domain.y_lo; break;
    case Face::YHi: axis = 1; fixed = domain.y_hi; break;
    case Face::ZLo: axis = 2; fixed = domain.z_lo; break;
    case Face::ZHi: axis = 2; fixed = domain.z_hi; break;
  }
  const std::array<std::pair<double, double>, 3> bounds{{{domain.x_lo, domain.x_hi},
                                                         {domain.y_lo, domain.y_hi},
                                                         {domain.z_lo, domain.z_hi}}};
  const int u = (axis + 1) % 3;
  const int v = (axis + 2) % 3;
  const auto us = rule.on_interval(bounds[static_cast<std::size_t>(u)].first,
                                   bounds[static_cast<std::size_t>(u)].second);
  const auto vs = rule.on_interval(bounds[static_cast<std::size_t>(v)].first,
                                   bounds[static_cast<std::size_t>(v)].second);
  double total = 0.0;
  for (const auto& [a, wa] : us) {
    double s = 0.0;
    for (const auto& [b, wb] : vs) {
      Vec3 X;
      X[axis] = fixed;
      X[u] = a;
      X[v] = b;
      s += wb * checked(fn(X), X);
    }
    total += wa * s;
  }
  return total;
}

}  // namespace cbounds
