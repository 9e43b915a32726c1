#pragma once

#include <array>
#include <cmath>
#include <initializer_list>

namespace cbounds {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : v{x, y, z} {}

  constexpr double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(double s);

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

Vec3 operator+(Vec3 a, const Vec3& b);
Vec3 operator-(Vec3 a, const Vec3& b);
Vec3 operator*(Vec3 a, double s);
Vec3 operator*(double s, Vec3 a);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
bool is_finite(const Vec3& a);

// Row-major dense 3x3 tensor.
struct Mat3 {
  std::array<double, 9> m{};

  constexpr Mat3() = default;
  constexpr Mat3(std::initializer_list<double> rows) {
    std::size_t k = 0;
    for (double x : rows) {
      if (k < 9) m[k++] = x;
    }
  }

  constexpr double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  constexpr double operator()(int i, int j) const {
    return m[static_cast<std::size_t>(3 * i + j)];
  }

  static Mat3 identity();
  static Mat3 zero() { return {}; }
  static Mat3 diag(double a, double b, double c);

  Mat3& operator+=(const Mat3& o);
  Mat3& operator-=(const Mat3& o);
  Mat3& operator*=(double s);

  friend bool operator==(const Mat3&, const Mat3&) = default;
};

Mat3 operator+(Mat3 a, const Mat3& b);
Mat3 operator-(Mat3 a, const Mat3& b);
Mat3 operator*(Mat3 a, double s);
Mat3 operator*(double s, Mat3 a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& x);

Mat3 transpose(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);
double trace(const Mat3& a);
double frobenius_norm(const Mat3& a);
bool is_finite(const Mat3& a);
double max_abs_diff(const Mat3& a, const Mat3& b);

double det(const Mat3& m);
double ddot(const Mat3& a, const Mat3& b);

// Matrix of signed minors; equals det(m) * inverse(m)^T when m is invertible.
Mat3 cofactor(const Mat3& m);

// Throws SingularMatrix when |det m| <= kSingularTolerance.
Mat3 inverse(const Mat3& m);
inline constexpr double kSingularTolerance = 1e-14;

// Real eigenvalues of a symmetric matrix, sorted descending.
// Throws NotSymmetric when any |m_ij - m_ji| exceeds kSymmetryTolerance.
std::array<double, 3> sym_eigenvalues(const Mat3& m);
inline constexpr double kSymmetryTolerance = 1e-10;

// Rotation about e_z by angle theta; columns are (e_r, e_theta, e_z).
Mat3 rotation_z(double theta);

}  // namespace cbounds
