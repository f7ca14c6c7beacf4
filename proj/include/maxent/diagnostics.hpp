#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxent/grid_measure.hpp"
#include "maxent/maps.hpp"
#include "maxent/ulam.hpp"

namespace maxent {

struct MixingReport {
  std::optional<int> n_mix;              // first k with f^k(U) covering every box
  std::vector<double> coverage_profile;  // covered fraction after k = 1, 2, ...
  std::size_t start_box = 0;
};

/// Iterates the grid-scale forward image of a single start box: the boxes
/// covered at step k+1 are those hit by the images of S cell-centered
/// samples of each box covered at step k.
MixingReport mixing_check(const MapSpec& map, int resolution, std::size_t start_box, int max_iter,
                          int samples);

/// mixing_check from `starts` pseudorandom start boxes; the returned report
/// is the slowest one (unset n_mix counts as slowest).
MixingReport mixing_check_all_starts(const MapSpec& map, int resolution, int max_iter, int samples,
                                     std::uint64_t seed, int starts = 10);

struct SupportReport {
  double min_mass = 0.0;
  std::size_t zero_boxes = 0;  // boxes below the mass floor
};

/// A negative mass_floor selects the default 1e-3 / N^d.
SupportReport support_check(const GridMeasure& mu, double mass_floor = -1.0);

/// Empirical b(delta): min over box centers x of the mass of boxes whose
/// centers lie within delta of x. Requires delta >= box diameter.
double ball_lower_bound(const GridMeasure& mu, double delta);

struct UniquenessReport {
  double max_pairwise_tv = 0.0;
  std::vector<GridMeasure> measures;
  std::vector<bool> converged;
  bool all_converged() const;
};

/// Power iteration from `seeds` stratified random point masses (seed k starts
/// at a pseudorandom box in the k-th of `seeds` equal index ranges); returns
/// the largest pairwise TV distance among the limits.
UniquenessReport uniqueness_evidence(const UlamOperator& op, int seeds, double tol,
                                     std::uint64_t master_seed = 0, int max_iters = 10000);

}  // namespace maxent
