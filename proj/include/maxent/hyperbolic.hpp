#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "maxent/orbits.hpp"

namespace maxent {

/// c-hyperbolic times of one orbit. n is listed iff for every 1 <= j <= n
///   sum_{i=n-j}^{n-1} a_i <= -2 c j,
/// with a_i = log ||Df(x_i)^{-1}||.
struct HyperbolicTimeSet {
  double c = 0.0;
  std::vector<int> times;               // ascending, subset of 1..n
  std::vector<double> density_profile;  // entry n-1 is #(H in [1,n]) / n

  bool contains(int n) const;
  double terminal_density() const {
    return density_profile.empty() ? 0.0 : density_profile.back();
  }
};

/// Linear-time scan: with S_m = sum_{i<m} (a_i + 2c), n is hyperbolic iff
/// S_n <= min_{0<=m<n} S_m. Uses a[0..len).
HyperbolicTimeSet detect_hyperbolic_times(std::span<const double> a, double c);
/// Uses a_0..a_{n-1} of the orbit, n = orbit.length().
HyperbolicTimeSet detect_hyperbolic_times(const OrbitRecord& orbit, double c);

struct DensityCheck {
  bool average_below = false;  // Birkhoff average of a_i < -4c
  double average = 0.0;
  double terminal_density = 0.0;
};

DensityCheck density_lower_bound_check(const OrbitRecord& orbit, double c);

/// First n > m such that more than a fraction theta of the given orbits have
/// n as a hyperbolic time; nullopt if no such n is within all profiles.
std::optional<int> time_slice_density(std::span<const HyperbolicTimeSet> sets, int m, double theta);

struct ContractionOptions {
  double delta0 = 0.02;
  int pairs = 8;
  double slack = 0.05;
  int max_times = 10;   // hyperbolic times sampled from the set
  int max_depth = 16;   // largest j pulled back
  std::uint64_t seed = 0;
};

struct ContractionReport {
  double delta0 = 0.0;
  int times_tested = 0;
  long checks = 0;
  long passed = 0;
  double pass_fraction = 0.0;
  /// max over checks of d(pullback z, pullback w) / (e^{-jc} d(z, w)).
  double worst_ratio = 0.0;
  /// Largest observed one-step contraction factor d_j / d_{j-1}.
  double worst_step_ratio = 0.0;
};

/// Pulls random pairs near f^n(x) back along the orbit's own inverse branch
/// (at each step the preimage closest to x_{n-j}) and checks
/// d_j <= e^{-jc} d_0 (1 + slack). Pullback stops early once the pair
/// distance falls below 1e-9. Throws AmbiguityError when two preimages are
/// equally close (within 1e-9) to the orbit point.
ContractionReport verify_contraction(const MapSpec& map, const OrbitRecord& orbit,
                                     const HyperbolicTimeSet& hts,
                                     const ContractionOptions& options = {});

/// verify_contraction, halving delta0 (at most 5 times) until every check
/// passes. Returns the last report.
ContractionReport verify_contraction_adaptive(const MapSpec& map, const OrbitRecord& orbit,
                                              const HyperbolicTimeSet& hts,
                                              ContractionOptions options = {});

}  // namespace maxent
