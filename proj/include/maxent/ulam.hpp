#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxent/grid_measure.hpp"
#include "maxent/maps.hpp"

namespace maxent {

/// Finite-state version of the normalized dual transfer operator
/// G = (1/p) L*: row i is the distribution of G(delta_x) averaged over
/// sample points x of box i, i.e. each sample sends weight 1/(pS) to the
/// box of every one of its p preimages. Rows are stochastic; measures are
/// row vectors updated as mu <- mu T.
class UlamOperator {
 public:
  struct Entry {
    std::uint32_t col;
    double weight;
  };

  /// Takes ownership of per-row entry lists (sorted or not; duplicates are
  /// merged).
  UlamOperator(int dim, int resolution, int samples, std::vector<std::vector<Entry>> rows);

  int dim() const noexcept { return dim_; }
  int resolution() const noexcept { return resolution_; }
  int samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return row_offsets_.size() - 1; }
  std::size_t nnz() const noexcept { return cols_.size(); }

  std::span<const std::uint32_t> row_cols(std::size_t row) const;
  std::span<const double> row_weights(std::size_t row) const;
  double row_sum(std::size_t row) const;

  /// out = mu T, computed as an OpenMP gather over the transposed pattern.
  void apply(std::span<const double> mu, std::span<double> out) const;

 private:
  int dim_;
  int resolution_;
  int samples_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> weights_;
  // Transposed copy: for each destination box, the source rows feeding it.
  std::vector<std::size_t> col_offsets_;
  std::vector<std::uint32_t> col_rows_;
  std::vector<double> col_weights_;
};

/// Entries of row `box`: S jittered stratified samples (stream derived from
/// seed and box), every preimage deposited with weight 1/(pS). Shared by
/// the parallel and serial builders.
std::vector<UlamOperator::Entry> assemble_ulam_row(const MapSpec& map, const Grid& grid,
                                                   std::size_t box, int samples,
                                                   std::uint64_t seed);

/// Parallel over boxes. Audits the declared degree first; any branch
/// failure is reported as AssemblyError naming the box and sample.
UlamOperator build_ulam(const MapSpec& map, int resolution, int samples, std::uint64_t seed);

struct PowerResult {
  GridMeasure measure;
  /// TV distance between successive iterates, one entry per iteration.
  std::vector<double> residual_history;
  bool converged = false;
  int iterations = 0;
};

/// Iterates mu <- mu T until the TV step is below tol or max_iters steps are
/// taken. On convergence the returned measure is the iterate whose step was
/// below tol, so eigen_residual(result) equals the last history entry.
PowerResult power_iterate(const UlamOperator& op, const GridMeasure& init, double tol = 1e-10,
                          int max_iters = 10000);

/// TV distance between mu and mu T: the grid-scale defect of L* mu = p mu.
double eigen_residual(const MapSpec& map, const GridMeasure& mu, const UlamOperator& op);

/// Grid-scale f_* mu: each box's mass is split evenly over the boxes hit by
/// the forward images of S stratified (cell-centered) samples.
GridMeasure pushforward(const MapSpec& map, const GridMeasure& mu, int samples);

/// TV distance between mu and pushforward(map, mu, S).
double invariance_defect(const MapSpec& map, const GridMeasure& mu, int samples);

}  // namespace maxent
