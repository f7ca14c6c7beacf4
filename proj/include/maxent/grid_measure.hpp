#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxent/grid.hpp"
#include "maxent/sampling.hpp"

namespace maxent {

/// A probability measure represented by its masses on the boxes of a
/// uniform grid (row-major box order).
struct GridMeasure {
  int dim = 1;
  int resolution = 1;
  std::uint64_t seed = 0;
  std::vector<double> masses;

  Grid grid() const { return Grid(dim, resolution); }
  std::size_t size() const noexcept { return masses.size(); }

  static GridMeasure uniform(int dim, int resolution);
  static GridMeasure point_mass(int dim, int resolution, std::size_t box);

  /// Throws InvalidInput unless masses are nonnegative, finite, of length
  /// N^d and sum to 1 within `tol`.
  void validate(double tol = 1e-12) const;
};

/// Half the l1 distance between two mass vectors.
double tv_distance(std::span<const double> a, std::span<const double> b);
double tv_distance(const GridMeasure& a, const GridMeasure& b);

/// Sums masses over factor^d blocks; resolution must be divisible by factor.
GridMeasure coarsen(const GridMeasure& mu, int factor);

/// Draws `count` points distributed according to mu (box chosen by mass,
/// position uniform within the box).
std::vector<Point> sample_from_measure(const GridMeasure& mu, int count, std::uint64_t seed);

/// Default exclusion threshold for near-empty boxes: 1e-3 / N^d.
double default_mass_floor(const GridMeasure& mu);

/// Structured text form: a JSON object with dim, resolution, seed and the
/// row-major masses printed with 17 significant digits.
std::string to_document(const GridMeasure& mu);
GridMeasure measure_from_document(const std::string& text);
void write_measure(const GridMeasure& mu, const std::string& path);
GridMeasure read_measure(const std::string& path);

}  // namespace maxent
