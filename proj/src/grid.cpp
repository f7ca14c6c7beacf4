#include "maxent/grid.hpp"

#include <algorithm>
#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

Grid::Grid(int dim, int resolution) : dim_(dim), n_(resolution) {
  if (dim != 1 && dim != 2) throw InvalidInput("Grid: dimension must be 1 or 2");
  if (resolution < 1) throw InvalidInput("Grid: resolution must be positive");
  size_ = dim == 1 ? static_cast<std::size_t>(n_)
                   : static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
}

double Grid::box_diameter() const noexcept { return std::sqrt(static_cast<double>(dim_)) / n_; }

std::size_t Grid::index_of(const Point& x) const {
  std::array<int, kMaxDim> m{0, 0};
  for (int k = 0; k < dim_; ++k) {
    const int i = static_cast<int>(std::floor(x[k] * n_));
    m[static_cast<std::size_t>(k)] = std::clamp(i, 0, n_ - 1);
  }
  return index_of(m);
}

std::size_t Grid::index_of(const std::array<int, kMaxDim>& m) const {
  if (dim_ == 1) return static_cast<std::size_t>(m[0]);
  return static_cast<std::size_t>(m[0]) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(m[1]);
}

std::array<int, kMaxDim> Grid::multi_index(std::size_t box) const {
  if (dim_ == 1) return {static_cast<int>(box), 0};
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(box / n), static_cast<int>(box % n)};
}

Point Grid::center(std::size_t box) const {
  const auto m = multi_index(box);
  if (dim_ == 1) return Point((m[0] + 0.5) / n_);
  return Point((m[0] + 0.5) / n_, (m[1] + 0.5) / n_);
}

Vec Grid::lower_corner(std::size_t box) const {
  const auto m = multi_index(box);
  return {static_cast<double>(m[0]) / n_, dim_ == 2 ? static_cast<double>(m[1]) / n_ : 0.0};
}

}  // namespace maxent
