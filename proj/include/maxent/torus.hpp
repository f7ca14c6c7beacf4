#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace maxent {

inline constexpr int kMaxDim = 2;

using Vec = std::array<double, kMaxDim>;

// Reduces v into [0,1).
double wrap_unit(double v);
// Reduces v into [-1/2,1/2).
double wrap_signed(double v);

/// A point on the d-torus R^d / Z^d, d in {1,2}. Coordinates are reduced
/// mod 1 on construction, so every stored coordinate lies in [0,1).
class Point {
 public:
  Point() = default;
  explicit Point(double x);
  Point(double x, double y);
  /// Wraps an arbitrary lift (only the first `dim` entries are used).
  static Point from_lift(int dim, const Vec& lift);

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  const Vec& coords() const noexcept { return c_; }

  std::string to_string() const;

 private:
  int dim_ = 1;
  Vec c_{};
};

/// Euclidean distance between minimal-length representatives mod 1.
double torus_distance(const Point& a, const Point& b);

/// Signed coordinate difference b - a, each component in [-1/2,1/2).
Vec torus_delta(const Point& a, const Point& b);

}  // namespace maxent
