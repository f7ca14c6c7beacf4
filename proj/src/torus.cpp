#include "maxent/torus.hpp"

#include <cmath>
#include <sstream>

#include "maxent/errors.hpp"

namespace maxent {

double wrap_unit(double v) {
  double r = v - std::floor(v);
  // v slightly below an integer can round up to exactly 1.
  if (r >= 1.0) r = 0.0;
  return r;
}

double wrap_signed(double v) {
  double r = wrap_unit(v + 0.5) - 0.5;
  return r;
}

Point::Point(double x) : dim_(1), c_{wrap_unit(x), 0.0} {}

Point::Point(double x, double y) : dim_(2), c_{wrap_unit(x), wrap_unit(y)} {}

Point Point::from_lift(int dim, const Vec& lift) {
  if (dim == 1) return Point(lift[0]);
  if (dim == 2) return Point(lift[0], lift[1]);
  throw InvalidInput("Point: dimension must be 1 or 2");
}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(' << c_[0];
  if (dim_ == 2) os << ", " << c_[1];
  os << ')';
  return os.str();
}

Vec torus_delta(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InvalidInput("torus_delta: dimension mismatch");
  Vec d{};
  for (int i = 0; i < a.dim(); ++i) d[static_cast<std::size_t>(i)] = wrap_signed(b[i] - a[i]);
  return d;
}

double torus_distance(const Point& a, const Point& b) {
  const Vec d = torus_delta(a, b);
  return std::hypot(d[0], d[1]);
}

}  // namespace maxent
