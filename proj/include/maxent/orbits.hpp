#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "maxent/grid_measure.hpp"
#include "maxent/maps.hpp"

namespace maxent {

/// Forward orbit x_0..x_n with a_i = log ||Df(x_i)^{-1}|| = -log sigma_min(Df(x_i))
/// cached for i = 0..n.
struct OrbitRecord {
  std::vector<Point> points;
  std::vector<double> inv_norm_logs;

  /// Number of steps n (points holds n + 1 entries).
  int length() const noexcept { return static_cast<int>(points.size()) - 1; }
};

/// log ||A^{-1}|| = -log of the smallest singular value. Throws
/// DegenerateDerivative when sigma_min < 1e-14.
double log_inverse_norm(const Mat& a);

OrbitRecord generate_orbit(const MapSpec& map, const Point& x0, int n);

/// Lyapunov exponents from n steps of QR re-orthogonalization, sorted
/// descending.
std::vector<double> lyapunov_spectrum(const MapSpec& map, const Point& x0, int n);

/// Birkhoff average of log |det Df| over x_0..x_{n-1}.
double log_det_average(const MapSpec& map, const Point& x0, int n);

struct IntegratedExponents {
  std::vector<double> mean;
  std::vector<double> std_error;
};

/// Mean and standard error of lyapunov_spectrum over `samples` initial
/// points drawn from mu.
IntegratedExponents integrated_exponents(const MapSpec& map, const GridMeasure& mu, int n,
                                         int samples, std::uint64_t seed = 0);

/// log ||Df^N(x)^{-1}||, accumulated with per-step renormalization.
double log_inverse_norm_power(const MapSpec& map, const Point& x, int power);

/// Smallest N in 1..max_power whose estimate(N) is < -4c. Throws
/// SelectionFailure carrying the best (smallest) estimate otherwise.
int first_qualifying_power(const std::function<double(int)>& estimate, double c, int max_power);

/// first_qualifying_power with estimate(N) = mean over `samples` points from
/// mu of (1/N) log ||Df^N(x)^{-1}||.
int select_power_N(const MapSpec& map, const GridMeasure& mu, double c, int samples,
                   int max_power = 50, std::uint64_t seed = 0);

}  // namespace maxent
