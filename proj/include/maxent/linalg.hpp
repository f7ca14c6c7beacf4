#pragma once

// Dense linear algebra on d x d matrices with d <= 2. Everything here is
// closed form; the dimension never exceeds two.

#include <array>

#include "maxent/torus.hpp"

namespace maxent {

class Mat {
 public:
  Mat() = default;
  /// 1x1 matrix.
  explicit Mat(double a) : dim_(1), a_{a, 0.0, 0.0, 0.0} {}
  /// 2x2 matrix given row-major.
  Mat(double a00, double a01, double a10, double a11) : dim_(2), a_{a00, a01, a10, a11} {}

  static Mat identity(int dim);
  static Mat diagonal(int dim, const Vec& d);

  int dim() const noexcept { return dim_; }
  double operator()(int r, int c) const noexcept { return a_[static_cast<std::size_t>(2 * r + c)]; }
  double& operator()(int r, int c) noexcept { return a_[static_cast<std::size_t>(2 * r + c)]; }

  bool all_finite() const;

 private:
  int dim_ = 1;
  std::array<double, 4> a_{1.0, 0.0, 0.0, 1.0};
};

Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);
Mat operator*(double s, const Mat& a);
Mat operator+(const Mat& a, const Mat& b);

double det(const Mat& a);
Mat inverse(const Mat& a);
Mat transpose(const Mat& a);

/// Singular values sorted descending; entries beyond dim() are zero.
std::array<double, 2> singular_values(const Mat& a);

struct QR {
  Mat q;
  Mat r;  // upper triangular, r(0,0) >= 0
};

/// Gram-Schmidt QR; the orthogonal factor is exactly orthonormal by
/// construction in d = 2 (second column is the rotated first column).
QR qr_decompose(const Mat& a);

}  // namespace maxent
