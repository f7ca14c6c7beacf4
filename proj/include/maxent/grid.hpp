#pragma once

#include <cstddef>

#include "maxent/torus.hpp"

namespace maxent {

/// Uniform partition of the d-torus into N^d half-open boxes
/// [i/N, (i+1)/N) per axis. Box indices are row-major over the
/// multi-index (i_x, i_y).
class Grid {
 public:
  Grid(int dim, int resolution);

  int dim() const noexcept { return dim_; }
  int resolution() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return 1.0 / n_; }
  /// Euclidean diameter of one box.
  double box_diameter() const noexcept;

  std::size_t index_of(const Point& x) const;
  std::size_t index_of(const std::array<int, kMaxDim>& multi) const;
  std::array<int, kMaxDim> multi_index(std::size_t box) const;
  Point center(std::size_t box) const;
  Vec lower_corner(std::size_t box) const;

 private:
  int dim_;
  int n_;
  std::size_t size_;
};

}  // namespace maxent
