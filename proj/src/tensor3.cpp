#include "contact_bounds/tensor3.hpp"

#include <algorithm>
#include <functional>
#include <numbers>

#include "contact_bounds/error.hpp"

namespace cbounds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NonPositiveJacobian: return "NonPositiveJacobian";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::InadmissibleTrial: return "InadmissibleTrial";
    case ErrorCode::InfeasibleProblem: return "InfeasibleProblem";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Vec3& Vec3::operator+=(const Vec3& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
  return *this;
}
Vec3& Vec3::operator-=(const Vec3& o) {
  for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
  return *this;
}
Vec3& Vec3::operator*=(double s) {
  for (double& x : v) x *= s;
  return *this;
}

Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
Vec3 operator*(Vec3 a, double s) { return a *= s; }
Vec3 operator*(double s, Vec3 a) { return a *= s; }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
bool is_finite(const Vec3& a) {
  return std::all_of(a.v.begin(), a.v.end(), [](double x) { return std::isfinite(x); });
}

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
  Mat3 r;
  r(0, 0) = a;
  r(1, 1) = b;
  r(2, 2) = c;
  return r;
}

Mat3& Mat3::operator+=(const Mat3& o) {
  for (std::size_t k = 0; k < 9; ++k) m[k] += o.m[k];
  return *this;
}
Mat3& Mat3::operator-=(const Mat3& o) {
  for (std::size_t k = 0; k < 9; ++k) m[k] -= o.m[k];
  return *this;
}
Mat3& Mat3::operator*=(double s) {
  for (double& x : m) x *= s;
  return *this;
}

Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
Mat3 operator*(Mat3 a, double s) { return a *= s; }
Mat3 operator*(double s, Mat3 a) { return a *= s; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& x) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }
double frobenius_norm(const Mat3& a) { return std::sqrt(ddot(a, a)); }

bool is_finite(const Mat3& a) {
  return std::all_of(a.m.begin(), a.m.end(), [](double x) { return std::isfinite(x); });
}

double max_abs_diff(const Mat3& a, const Mat3& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < 9; ++k) d = std::max(d, std::abs(a.m[k] - b.m[k]));
  return d;
}

double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double ddot(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a.m[k] * b.m[k];
  return s;
}

Mat3 cofactor(const Mat3& m) {
  Mat3 c;
  c(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  c(0, 1) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  c(0, 2) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  c(1, 0) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  c(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  c(1, 2) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  c(2, 0) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  c(2, 1) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  c(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return c;
}

Mat3 inverse(const Mat3& m) {
  const double d = det(m);
  if (!(std::abs(d) > kSingularTolerance)) {
    throw Error(ErrorCode::SingularMatrix, "determinant " + std::to_string(d));
  }
  return transpose(cofactor(m)) * (1.0 / d);
}

std::array<double, 3> sym_eigenvalues(const Mat3& a) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance) {
        throw Error(ErrorCode::NotSymmetric, "entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") asymmetric");
      }

  const double q = trace(a) / 3.0;
  const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * off;
  const double scale = std::max({std::abs(a(0, 0)), std::abs(a(1, 1)), std::abs(a(2, 2)),
                                 std::sqrt(off), 1e-300});
  if (p2 <= 1e-30 * scale * scale) return {q, q, q};

  std::array<double, 3> ev;
  if (off <= 1e-30 * scale * scale) {
    // Already diagonal: deflate directly.
    ev = {a(0, 0), a(1, 1), a(2, 2)};
  } else {
    const double p = std::sqrt(p2 / 6.0);
    const Mat3 b = (a - Mat3::identity() * q) * (1.0 / p);
    const double r = std::clamp(det(b) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    ev[0] = q + 2.0 * p * std::cos(phi);
    ev[2] = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    ev[1] = 3.0 * q - ev[0] - ev[2];

    // One Newton step on the characteristic polynomial where it is well conditioned.
    for (double& lam : ev) {
      const Mat3 s = a - Mat3::identity() * lam;
      const double f = det(s);
      const double df = -trace(cofactor(s));
      if (std::abs(df) > 1e-8 * scale * scale) lam -= f / df;
    }
  }
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

Mat3 rotation_z(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Mat3{c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0};
}

}  // namespace cbounds
