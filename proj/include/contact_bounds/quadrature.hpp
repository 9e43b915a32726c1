#pragma once

#include <functional>
#include <vector>

#include "contact_bounds/tensor3.hpp"

namespace cbounds {

// Axis-aligned reference box. Faces are named by the axis they cut and the side.
struct Box3 {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
  double z_lo = 0.0, z_hi = 1.0;

  double volume() const { return (x_hi - x_lo) * (y_hi - y_lo) * (z_hi - z_lo); }
  // Closed box inflated by tol.
  bool contains(const Vec3& X, double tol = 1e-12) const;
  // Throws InvalidParameters unless lo < hi on every axis.
  void validate() const;
};

enum class Face { XLo, XHi, YLo, YHi, ZLo, ZHi };

inline constexpr Face kAllFaces[] = {Face::XLo, Face::XHi, Face::YLo,
                                     Face::YHi, Face::ZLo, Face::ZHi};

// Outward unit normal of a face in reference coordinates.
Vec3 outward_normal(Face face);
double face_area(const Box3& box, Face face);

// Tensor-product Gauss-Legendre rule with `order` nodes per axis.
class QuadratureRule {
 public:
  explicit QuadratureRule(int order = 8);

  int order() const { return static_cast<int>(nodes_.size()); }
  // Nodes and weights on [-1, 1].
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Nodes/weights mapped onto [lo, hi].
  std::vector<std::pair<double, double>> on_interval(double lo, double hi) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kDefaultQuadOrder = 8;

using ScalarField = std::function<double(const Vec3&)>;

// Throws NonFiniteIntegrand when fn is not finite at a node. Summation order is fixed.
double integrate_volume(const ScalarField& fn, const Box3& domain, const QuadratureRule& rule);
double integrate_face(const ScalarField& fn, const Box3& domain, Face face,
                      const QuadratureRule& rule);

}  // namespace cbounds
