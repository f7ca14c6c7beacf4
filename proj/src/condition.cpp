#include "maxent/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/errors.hpp"

namespace maxent {

double exterior_power_norm(const Mat& a, int k) {
  if (!a.all_finite()) throw InvalidInput("exterior_power_norm: non-finite matrix entry");
  if (k < 1 || k > a.dim()) throw InvalidInput("exterior_power_norm: k out of range");
  if (k == a.dim()) return std::abs(det(a));
  return singular_values(a)[0];  // k = 1 < d = 2
}

namespace {

template <typename Fn>
void for_each_grid_point(int dim, int grid_n, Fn&& fn) {
  for (int i = 0; i < grid_n; ++i) {
    if (dim == 1) {
      fn(Point(static_cast<double>(i) / grid_n));
      continue;
    }
    for (int j = 0; j < grid_n; ++j)
      fn(Point(static_cast<double>(i) / grid_n, static_cast<double>(j) / grid_n));
  }
}

}  // namespace

double compute_Ck(const MapSpec& map, int k, int grid_n, double lipschitz) {
  if (map.dim() == 1) throw EmptyRange("compute_Ck: no k with 1 <= k <= d-1 on the circle");
  if (k < 1 || k > map.dim() - 1) throw InvalidInput("compute_Ck: k out of range");
  if (grid_n < 2) throw InvalidInput("compute_Ck: grid_n must be >= 2");
  if (lipschitz < 0.0) throw InvalidInput("compute_Ck: negative Lipschitz bound");
  double best = 0.0;
  for_each_grid_point(map.dim(), grid_n, [&](const Point& x) {
    best = std::max(best, exterior_power_norm(map.derivative(x), k));
  });
  return best * (1.0 + lipschitz / grid_n);
}

ConditionReport check_condition(const MapSpec& map, int grid_n, double lipschitz) {
  ConditionReport r;
  r.dim = map.dim();
  r.degree = map.degree();
  r.log_p = std::log(static_cast<double>(map.degree()));
  double max_log_ck = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= map.dim() - 1; ++k) {
    r.Ck.push_back(compute_Ck(map, k, grid_n, lipschitz));
    max_log_ck = std::max(max_log_ck, std::log(r.Ck.back()));
  }
  if (r.Ck.empty()) {
    r.margin_c = r.log_p;
    r.passes = true;
  } else {
    r.margin_c = r.log_p - max_log_ck;
    r.passes = max_log_ck < r.log_p;
  }
  r.hyperbolic_c = r.margin_c / 10.0;

  double min_abs = std::numeric_limits<double>::infinity();
  bool seen_pos = false, seen_neg = false;
  for_each_grid_point(map.dim(), grid_n, [&](const Point& x) {
    const double d = det(map.derivative(x));
    min_abs = std::min(min_abs, std::abs(d));
    (d > 0 ? seen_pos : seen_neg) = true;
  });
  r.min_abs_det = min_abs;
  r.derivative_invertible = min_abs > 1e-12 && !(seen_pos && seen_neg);
  return r;
}

}  // namespace maxent
