#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxent/linalg.hpp"
#include "maxent/torus.hpp"

namespace maxent {

enum class Perturbation {
  none,
  // d = 1: g(x) = sin(2 pi x); d = 2: g(x, y) = (sin(2 pi y), sin(2 pi x)).
  sine,
};

/// Analytic inverse-branch data for maps of the form f(x) = A x + eps g(x)
/// mod 1 with A a positive integer diagonal matrix.
struct BranchHint {
  std::array<int, kMaxDim> diag{1, 1};
  double eps = 0.0;
  Perturbation g = Perturbation::none;
};

Vec perturbation_value(Perturbation g, int dim, const Vec& x);
Mat perturbation_derivative(Perturbation g, int dim, const Vec& x);

/// A self-describing local diffeomorphism of the d-torus. Immutable after
/// construction; all member functions are safe to call concurrently.
class MapSpec {
 public:
  /// Evaluates the lift: returns f(x) before reduction mod 1.
  using LiftFn = std::function<Vec(const Vec&)>;
  using DerivFn = std::function<Mat(const Vec&)>;

  MapSpec(std::string name, int dim, int degree, LiftFn lift, DerivFn derivative,
          std::optional<BranchHint> hint = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::optional<BranchHint>& branch_hint() const noexcept { return hint_; }

  Point eval(const Point& x) const;
  Vec eval_lift(const Vec& x) const { return lift_(x); }
  Mat derivative(const Point& x) const { return derivative_(x.coords()); }
  Mat derivative_lift(const Vec& x) const { return derivative_(x); }

 private:
  std::string name_;
  int dim_;
  int degree_;
  LiftFn lift_;
  DerivFn derivative_;
  std::optional<BranchHint> hint_;
};

/// f(x) = diag(a) x + eps g(x) mod 1. Degree is the product of the diagonal.
MapSpec affine_sine_map(std::string name, int dim, std::array<int, kMaxDim> diag, double eps);

MapSpec doubling_map();
MapSpec circle_linear_map(int a);
MapSpec perturbed_circle_map(int a, double eps);
MapSpec linear_torus_map(int a);
MapSpec diagonal_torus_map(int a, int b);
MapSpec perturbed_torus_map(int a, double eps);
/// (x, y) -> (x, y); degree 1, not expanding.
MapSpec identity_torus_map();
/// (x, y) -> (x + y, y); degree 1, area preserving. No branch hint.
MapSpec shear_torus_map();

struct MapParams {
  std::string name = "doubling";
  int a = 3;
  int b = 2;
  double eps = 0.05;
};

/// Builds a map family by name: doubling, circle_linear, perturbed_circle,
/// linear_torus, diagonal_torus, perturbed_torus, identity_torus,
/// shear_torus. Unknown names raise ConfigError.
MapSpec make_map(const MapParams& params);

std::vector<std::string> builtin_map_names();

}  // namespace maxent
