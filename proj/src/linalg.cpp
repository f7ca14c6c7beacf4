#include "maxent/linalg.hpp"

#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

Mat Mat::identity(int dim) { return dim == 1 ? Mat(1.0) : Mat(1.0, 0.0, 0.0, 1.0); }

Mat Mat::diagonal(int dim, const Vec& d) {
  return dim == 1 ? Mat(d[0]) : Mat(d[0], 0.0, 0.0, d[1]);
}

bool Mat::all_finite() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if (!std::isfinite((*this)(r, c))) return false;
  return true;
}

static void require_same_dim(const Mat& a, const Mat& b) {
  if (a.dim() != b.dim()) throw InvalidInput("matrix dimension mismatch");
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_dim(a, b);
  if (a.dim() == 1) return Mat(a(0, 0) * b(0, 0));
  return Mat(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
             a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.dim() == 1) return {a(0, 0) * v[0], 0.0};
  return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

Mat operator*(double s, const Mat& a) {
  if (a.dim() == 1) return Mat(s * a(0, 0));
  return Mat(s * a(0, 0), s * a(0, 1), s * a(1, 0), s * a(1, 1));
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_dim(a, b);
  if (a.dim() == 1) return Mat(a(0, 0) + b(0, 0));
  return Mat(a(0, 0) + b(0, 0), a(0, 1) + b(0, 1), a(1, 0) + b(1, 0), a(1, 1) + b(1, 1));
}

double det(const Mat& a) {
  if (a.dim() == 1) return a(0, 0);
  return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

Mat inverse(const Mat& a) {
  const double d = det(a);
  if (d == 0.0 || !std::isfinite(d)) throw DegenerateDerivative("inverse: singular matrix");
  if (a.dim() == 1) return Mat(1.0 / d);
  return Mat(a(1, 1) / d, -a(0, 1) / d, -a(1, 0) / d, a(0, 0) / d);
}

Mat transpose(const Mat& a) {
  if (a.dim() == 1) return a;
  return Mat(a(0, 0), a(1, 0), a(0, 1), a(1, 1));
}

std::array<double, 2> singular_values(const Mat& a) {
  if (a.dim() == 1) return {std::abs(a(0, 0)), 0.0};
  // Blinn's decomposition of a 2x2 into a rotation-scale pair.
  const double e = 0.5 * (a(0, 0) + a(1, 1));
  const double f = 0.5 * (a(0, 0) - a(1, 1));
  const double g = 0.5 * (a(1, 0) + a(0, 1));
  const double h = 0.5 * (a(1, 0) - a(0, 1));
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  return {q + r, std::abs(q - r)};
}

QR qr_decompose(const Mat& a) {
  if (a.dim() == 1) {
    const double v = a(0, 0);
    return {Mat(v < 0 ? -1.0 : 1.0), Mat(std::abs(v))};
  }
  const double r00 = std::hypot(a(0, 0), a(1, 0));
  if (r00 == 0.0) throw DegenerateDerivative("qr_decompose: zero first column");
  const double q0x = a(0, 0) / r00;
  const double q0y = a(1, 0) / r00;
  // q1 is q0 rotated by +90 degrees.
  const double q1x = -q0y;
  const double q1y = q0x;
  const double r01 = q0x * a(0, 1) + q0y * a(1, 1);
  const double r11 = q1x * a(0, 1) + q1y * a(1, 1);
  return {Mat(q0x, q1x, q0y, q1y), Mat(r00, r01, 0.0, r11)};
}

}  // namespace maxent
