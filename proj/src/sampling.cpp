#include "maxent/sampling.hpp"

#include <cmath>

#include "maxent/errors.hpp"

namespace maxent {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

int lattice_side(int dim, int samples) {
  if (samples < 1) throw InvalidInput("lattice_side: need at least one sample");
  if (dim == 1) return samples;
  int k = static_cast<int>(std::sqrt(static_cast<double>(samples)));
  while (k * k < samples) ++k;
  return k;
}

namespace {

Point cell_point(const Grid& grid, const Vec& corner, int side, int cell, double ux, double uy) {
  const double h = grid.spacing() / side;
  if (grid.dim() == 1) return Point(corner[0] + (cell + ux) * h);
  const int cx = cell / side;
  const int cy = cell % side;
  return Point(corner[0] + (cx + ux) * h, corner[1] + (cy + uy) * h);
}

}  // namespace

std::vector<Point> box_samples(const Grid& grid, std::size_t box, int samples,
                               RandomStream* jitter) {
  const int side = lattice_side(grid.dim(), samples);
  const long cells = grid.dim() == 1 ? side : static_cast<long>(side) * side;
  const Vec corner = grid.lower_corner(box);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const int cell = static_cast<int>(static_cast<long>(s) * cells / samples);
    double ux = 0.5, uy = 0.5;
    if (jitter) {
      ux = jitter->uniform();
      uy = grid.dim() == 2 ? jitter->uniform() : 0.5;
    }
    out.push_back(cell_point(grid, corner, side, cell, ux, uy));
  }
  return out;
}

std::vector<Point> box_lattice(const Grid& grid, std::size_t box, int samples) {
  const int side = lattice_side(grid.dim(), samples);
  const int cells = grid.dim() == 1 ? side : side * side;
  const Vec corner = grid.lower_corner(box);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) out.push_back(cell_point(grid, corner, side, c, 0.5, 0.5));
  return out;
}

}  // namespace maxent
