#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "maxent/grid.hpp"

namespace maxent {

/// splitmix64 finalizer; used to derive independent per-task streams from a
/// master seed so results do not depend on thread scheduling.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }

 private:
  std::mt19937_64 engine_;
};

/// Points per axis of the stratification lattice for S samples:
/// ceil(S^(1/d)).
int lattice_side(int dim, int samples);

/// S stratified points in `box`: the box is cut into lattice_side^d cells,
/// S cells are chosen evenly, and each point is placed at its cell center
/// (jitter == nullptr) or uniformly inside the cell.
std::vector<Point> box_samples(const Grid& grid, std::size_t box, int samples,
                               RandomStream* jitter);

/// One point at the center of every cell of the full lattice_side^d lattice.
std::vector<Point> box_lattice(const Grid& grid, std::size_t box, int samples);

}  // namespace maxent
