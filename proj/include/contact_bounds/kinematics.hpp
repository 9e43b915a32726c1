#pragma once

#include <variant>

#include "contact_bounds/quadrature.hpp"
#include "contact_bounds/tensor3.hpp"

namespace cbounds {

// x = a X + b, y = Y / sqrt(a), z = Z / sqrt(a).
struct TriaxialStretch {
  double a = 1.0;
  double b = 0.0;
};

// r = sqrt(2 a X + b), theta = A Y / sqrt(a), z = Z / (A sqrt(a)).
struct StretchBend {
  double A = 1.0;
  double a = 1.0;
  double b = 1.0;
};

// x = F0 X + t.
struct Homogeneous {
  Mat3 F0 = Mat3::identity();
  Vec3 t{};
};

using DeformationMap = std::variant<TriaxialStretch, StretchBend, Homogeneous>;

struct StretchTriple {
  double l1 = 1.0, l2 = 1.0, l3 = 1.0;
  double product() const { return l1 * l2 * l3; }
};

// Smallest admissible deformed radius for the bending family.
inline constexpr double kMinRadius = 1e-6;
inline constexpr double kDomainTolerance = 1e-12;

const char* family_name(const DeformationMap& map);
bool same_family(const DeformationMap& a, const DeformationMap& b);
// True for the two built-in isochoric families, and Homogeneous maps with det F0 = 1.
bool is_isochoric(const DeformationMap& map, double tol = 1e-12);

// Throws InvalidParameters on bad family parameters; NonPositiveJacobian for an
// orientation-reversing homogeneous map.
void validate(const DeformationMap& map);
// Also checks the bending radius stays above kMinRadius across the box.
void validate(const DeformationMap& map, const Box3& domain);

// Deformed radius r(X) for the bending family.
double bend_radius(const StretchBend& map, double X);

// Deformation gradient in the principal frame: Cartesian for the affine families,
// (e_r, e_theta, e_z) for StretchBend.
Mat3 deformation_gradient(const DeformationMap& map, const Vec3& X);
// Same, rejecting points outside the box with OutOfDomain.
Mat3 deformation_gradient(const DeformationMap& map, const Vec3& X, const Box3& domain);

// Grad chi in Cartesian spatial components.
Mat3 cartesian_gradient(const DeformationMap& map, const Vec3& X);
// Rotation taking principal-frame spatial components to Cartesian ones at X.
Mat3 principal_frame(const DeformationMap& map, const Vec3& X);

// chi(X) in Cartesian components.
Vec3 placement(const DeformationMap& map, const Vec3& X);
Vec3 displacement(const DeformationMap& map, const Vec3& X);
Vec3 displacement(const DeformationMap& map, const Vec3& X, const Box3& domain);

// Family order (lambda1, lambda2, lambda3), not sorted.
StretchTriple principal_stretches(const DeformationMap& map, const Vec3& X);
StretchTriple principal_stretches(const DeformationMap& map, const Vec3& X, const Box3& domain);

// det F; throws NonPositiveJacobian when det F <= 0.
double jacobian(const DeformationMap& map, const Vec3& X);

// Volume of chi(domain), analytic per family.
double image_volume(const DeformationMap& map, const Box3& domain);

struct InjectivityResult {
  bool injective = false;
  double jacobian_integral = 0.0;
  double image_volume = 0.0;
};

// Checks int_domain det(Grad chi) dX <= vol(chi(domain)) + tolerance.
InjectivityResult injectivity_report(const DeformationMap& map, const Box3& domain,
                                     int quad_order, double tol = 1e-9);
bool injectivity_check(const DeformationMap& map, const Box3& domain, int quad_order);

// Largest principal stretch over the box (closed-form per family).
double max_principal_stretch(const DeformationMap& map, const Box3& domain);

}  // namespace cbounds
