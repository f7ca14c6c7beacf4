#include "maxent/maps.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "maxent/errors.hpp"

namespace maxent {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Vec perturbation_value(Perturbation g, int dim, const Vec& x) {
  if (g == Perturbation::none) return {0.0, 0.0};
  if (dim == 1) return {std::sin(kTwoPi * x[0]), 0.0};
  return {std::sin(kTwoPi * x[1]), std::sin(kTwoPi * x[0])};
}

Mat perturbation_derivative(Perturbation g, int dim, const Vec& x) {
  if (g == Perturbation::none) return dim == 1 ? Mat(0.0) : Mat(0.0, 0.0, 0.0, 0.0);
  if (dim == 1) return Mat(kTwoPi * std::cos(kTwoPi * x[0]));
  return Mat(0.0, kTwoPi * std::cos(kTwoPi * x[1]), kTwoPi * std::cos(kTwoPi * x[0]), 0.0);
}

MapSpec::MapSpec(std::string name, int dim, int degree, LiftFn lift, DerivFn derivative,
                 std::optional<BranchHint> hint)
    : name_(std::move(name)),
      dim_(dim),
      degree_(degree),
      lift_(std::move(lift)),
      derivative_(std::move(derivative)),
      hint_(hint) {
  if (dim_ != 1 && dim_ != 2) throw InvalidInput("MapSpec: dimension must be 1 or 2");
  if (degree_ < 1) throw InvalidInput("MapSpec: degree must be >= 1");
  if (!lift_ || !derivative_) throw InvalidInput("MapSpec: missing evaluation function");
}

Point MapSpec::eval(const Point& x) const {
  if (x.dim() != dim_) throw InvalidInput("MapSpec::eval: dimension mismatch");
  return Point::from_lift(dim_, lift_(x.coords()));
}

MapSpec affine_sine_map(std::string name, int dim, std::array<int, kMaxDim> diag, double eps) {
  if (dim == 1) diag[1] = 1;
  if (diag[0] < 1 || diag[1] < 1) throw InvalidInput("affine_sine_map: diagonal must be positive");
  if (!std::isfinite(eps)) throw InvalidInput("affine_sine_map: eps must be finite");
  const Perturbation g = eps == 0.0 ? Perturbation::none : Perturbation::sine;
  const Vec a{static_cast<double>(diag[0]), static_cast<double>(diag[1])};
  auto lift = [dim, a, eps, g](const Vec& x) -> Vec {
    const Vec p = perturbation_value(g, dim, x);
    return {a[0] * x[0] + eps * p[0], dim == 2 ? a[1] * x[1] + eps * p[1] : 0.0};
  };
  auto derivative = [dim, a, eps, g](const Vec& x) -> Mat {
    return Mat::diagonal(dim, a) + eps * perturbation_derivative(g, dim, x);
  };
  const int degree = diag[0] * (dim == 2 ? diag[1] : 1);
  return MapSpec(std::move(name), dim, degree, lift, derivative, BranchHint{diag, eps, g});
}

MapSpec doubling_map() { return affine_sine_map("doubling", 1, {2, 1}, 0.0); }

MapSpec circle_linear_map(int a) { return affine_sine_map("circle_linear", 1, {a, 1}, 0.0); }

MapSpec perturbed_circle_map(int a, double eps) {
  return affine_sine_map("perturbed_circle", 1, {a, 1}, eps);
}

MapSpec linear_torus_map(int a) { return affine_sine_map("linear_torus", 2, {a, a}, 0.0); }

MapSpec diagonal_torus_map(int a, int b) {
  return affine_sine_map("diagonal_torus", 2, {a, b}, 0.0);
}

MapSpec perturbed_torus_map(int a, double eps) {
  return affine_sine_map("perturbed_torus", 2, {a, a}, eps);
}

MapSpec identity_torus_map() { return affine_sine_map("identity_torus", 2, {1, 1}, 0.0); }

MapSpec shear_torus_map() {
  auto lift = [](const Vec& x) -> Vec { return {x[0] + x[1], x[1]}; };
  auto derivative = [](const Vec&) { return Mat(1.0, 1.0, 0.0, 1.0); };
  return MapSpec("shear_torus", 2, 1, lift, derivative);
}

MapSpec make_map(const MapParams& p) {
  if (p.name == "doubling") return doubling_map();
  if (p.name == "circle_linear") return circle_linear_map(p.a);
  if (p.name == "perturbed_circle") return perturbed_circle_map(p.a, p.eps);
  if (p.name == "linear_torus") return linear_torus_map(p.a);
  if (p.name == "diagonal_torus") return diagonal_torus_map(p.a, p.b);
  if (p.name == "perturbed_torus") return perturbed_torus_map(p.a, p.eps);
  if (p.name == "identity_torus") return identity_torus_map();
  if (p.name == "shear_torus") return shear_torus_map();
  throw ConfigError("unknown map family '" + p.name + "'");
}

std::vector<std::string> builtin_map_names() {
  return {"doubling",        "circle_linear",  "perturbed_circle", "linear_torus",
          "diagonal_torus",  "perturbed_torus", "identity_torus",  "shear_torus"};
}

}  // namespace maxent
