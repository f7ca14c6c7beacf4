#pragma once

#include <vector>

#include "maxent/linalg.hpp"
#include "maxent/maps.hpp"

namespace maxent {

/// ||Lambda^k A||: product of the k largest singular values of A.
/// For k = d this is |det A|.
double exterior_power_norm(const Mat& a, int k);

/// max over the grid {i / grid_n}^d of exterior_power_norm(Df(x), k),
/// optionally inflated by (1 + lipschitz * h) with h the grid spacing.
/// Requires 1 <= k <= d-1; on the circle there is no such k (EmptyRange).
double compute_Ck(const MapSpec& map, int k, int grid_n, double lipschitz = 0.0);

struct ConditionReport {
  int dim = 1;
  int degree = 1;
  std::vector<double> Ck;  // indexed k = 1..d-1
  double log_p = 0.0;
  double margin_c = 0.0;      // c(f) = log p - max_k log C_k
  bool passes = false;        // max_k log C_k < log p
  double hyperbolic_c = 0.0;  // c(f) / 10
  // Local-diffeomorphism audit on the same grid.
  double min_abs_det = 0.0;
  bool derivative_invertible = false;
};

ConditionReport check_condition(const MapSpec& map, int grid_n = 256, double lipschitz = 0.0);

}  // namespace maxent
