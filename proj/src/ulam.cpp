#include "maxent/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "maxent/branches.hpp"
#include "maxent/errors.hpp"
#include "maxent/reference.hpp"

namespace maxent {

namespace {

std::vector<UlamOperator::Entry> merge_entries(std::vector<UlamOperator::Entry> row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.col < b.col; });
  std::vector<UlamOperator::Entry> out;
  for (const auto& e : row) {
    if (!out.empty() && out.back().col == e.col) {
      out.back().weight += e.weight;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

void check_audit(const MapSpec& map) {
  const auto audit = audit_degree(map);
  if (!audit.ok) {
    for (std::size_t i = 0; i < audit.counts.size(); ++i) {
      if (audit.counts[i] != static_cast<std::size_t>(map.degree())) {
        throw InvalidInput("degree audit failed for " + map.name() + ": " +
                           std::to_string(audit.counts[i]) + " preimages of " +
                           audit.points[i].to_string() + ", declared " +
                           std::to_string(map.degree()));
      }
    }
  }
}

void check_build_args(const MapSpec& map, int resolution, int samples) {
  if (resolution < 2) throw InvalidInput("build_ulam: resolution must be >= 2");
  if (samples < 1) throw InvalidInput("build_ulam: samples must be >= 1");
  const Grid g(map.dim(), resolution);
  if (g.size() > std::numeric_limits<std::uint32_t>::max())
    throw InvalidInput("build_ulam: grid too large");
}

}  // namespace

UlamOperator::UlamOperator(int dim, int resolution, int samples,
                           std::vector<std::vector<Entry>> rows)
    : dim_(dim), resolution_(resolution), samples_(samples) {
  const Grid g(dim, resolution);
  if (rows.size() != g.size()) throw InvalidInput("UlamOperator: row count must be N^d");
  row_offsets_.assign(rows.size() + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = merge_entries(std::move(rows[i]));
    row_offsets_[i + 1] = row_offsets_[i] + rows[i].size();
  }
  cols_.reserve(row_offsets_.back());
  weights_.reserve(row_offsets_.back());
  std::vector<std::size_t> col_count(rows.size() + 1, 0);
  for (const auto& row : rows) {
    for (const auto& e : row) {
      if (e.col >= rows.size()) throw InvalidInput("UlamOperator: column out of range");
      if (!(e.weight >= 0.0)) throw InvalidInput("UlamOperator: negative weight");
      cols_.push_back(e.col);
      weights_.push_back(e.weight);
      ++col_count[e.col + 1];
    }
  }
  // Counting sort into the transposed layout; rows stay ascending per column.
  col_offsets_.assign(rows.size() + 1, 0);
  for (std::size_t j = 0; j < rows.size(); ++j) col_offsets_[j + 1] = col_offsets_[j] + col_count[j + 1];
  col_rows_.resize(cols_.size());
  col_weights_.resize(cols_.size());
  std::vector<std::size_t> fill(col_offsets_.begin(), col_offsets_.end() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t slot = fill[cols_[k]]++;
      col_rows_[slot] = static_cast<std::uint32_t>(i);
      col_weights_[slot] = weights_[k];
    }
  }
}

std::span<const std::uint32_t> UlamOperator::row_cols(std::size_t row) const {
  return {cols_.data() + row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]};
}

std::span<const double> UlamOperator::row_weights(std::size_t row) const {
  return {weights_.data() + row_offsets_[row], row_offsets_[row + 1] - row_offsets_[row]};
}

double UlamOperator::row_sum(std::size_t row) const {
  double s = 0.0;
  for (double w : row_weights(row)) s += w;
  return s;
}

void UlamOperator::apply(std::span<const double> mu, std::span<double> out) const {
  const std::size_t n = size();
  if (mu.size() != n || out.size() != n) throw InvalidInput("UlamOperator::apply: size mismatch");
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long jj = 0; jj < count; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    double s = 0.0;
    for (std::size_t k = col_offsets_[j]; k < col_offsets_[j + 1]; ++k)
      s += mu[col_rows_[k]] * col_weights_[k];
    out[j] = s;
  }
}

std::vector<UlamOperator::Entry> assemble_ulam_row(const MapSpec& map, const Grid& grid,
                                                   std::size_t box, int samples,
                                                   std::uint64_t seed) {
  RandomStream rng(derive_seed(seed, box));
  const auto pts = box_samples(grid, box, samples, &rng);
  std::vector<std::uint32_t> hits;
  hits.reserve(pts.size() * static_cast<std::size_t>(map.degree()));
  for (std::size_t s = 0; s < pts.size(); ++s) {
    try {
      for (const Point& z : inverse_branches(map, pts[s]))
        hits.push_back(static_cast<std::uint32_t>(grid.index_of(z)));
    } catch (const BranchFailure& e) {
      throw AssemblyError(box, s, "Ulam assembly failed in box " + std::to_string(box) +
                                      ", sample " + std::to_string(s) + ": " + e.what());
    }
  }
  std::sort(hits.begin(), hits.end());
  const double unit = 1.0 / (static_cast<double>(map.degree()) * samples);
  std::vector<UlamOperator::Entry> row;
  for (std::size_t k = 0; k < hits.size();) {
    std::size_t m = k;
    while (m < hits.size() && hits[m] == hits[k]) ++m;
    row.push_back({hits[k], static_cast<double>(m - k) * unit});
    k = m;
  }
  return row;
}

UlamOperator build_ulam(const MapSpec& map, int resolution, int samples, std::uint64_t seed) {
  check_build_args(map, resolution, samples);
  check_audit(map);
  const Grid grid(map.dim(), resolution);
  std::vector<std::vector<UlamOperator::Entry>> rows(grid.size());
  // First failure by box index wins so the error is independent of scheduling.
  std::size_t failed_box = grid.size();
  std::exception_ptr failure;
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long bb = 0; bb < count; ++bb) {
    const auto box = static_cast<std::size_t>(bb);
    try {
      rows[box] = assemble_ulam_row(map, grid, box, samples, seed);
    } catch (...) {
#pragma omp critical(maxent_ulam_failure)
      {
        if (box < failed_box) {
          failed_box = box;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return UlamOperator(map.dim(), resolution, samples, std::move(rows));
}

namespace {

double renormalize(std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (total > 0.0)
    for (double& x : v) x /= total;
  return total;
}

void check_compatible(const UlamOperator& op, const GridMeasure& mu) {
  if (mu.dim != op.dim() || mu.resolution != op.resolution() || mu.masses.size() != op.size())
    throw InvalidInput("measure and operator live on different grids");
}

template <typename Apply>
PowerResult iterate(const UlamOperator& op, const GridMeasure& init, double tol, int max_iters,
                    Apply&& apply) {
  check_compatible(op, init);
  if (!(tol > 0.0)) throw InvalidInput("power_iterate: tol must be positive");
  PowerResult res;
  res.measure = init;
  std::vector<double> cur = init.masses;
  std::vector<double> next(cur.size());
  for (int it = 0; it < max_iters; ++it) {
    apply(cur, next);
    renormalize(next);
    const double step = tv_distance(cur, next);
    res.residual_history.push_back(step);
    res.iterations = it + 1;
    if (step < tol) {
      res.converged = true;
      break;
    }
    cur.swap(next);
  }
  res.measure.masses = std::move(cur);
  return res;
}

}  // namespace

PowerResult power_iterate(const UlamOperator& op, const GridMeasure& init, double tol,
                          int max_iters) {
  return iterate(op, init, tol, max_iters,
                 [&](const std::vector<double>& in, std::vector<double>& out) { op.apply(in, out); });
}

double eigen_residual(const MapSpec& map, const GridMeasure& mu, const UlamOperator& op) {
  if (map.dim() != op.dim()) throw InvalidInput("eigen_residual: map and operator dimension differ");
  check_compatible(op, mu);
  std::vector<double> next(mu.masses.size());
  op.apply(mu.masses, next);
  return tv_distance(mu.masses, next);
}

GridMeasure pushforward(const MapSpec& map, const GridMeasure& mu, int samples) {
  if (mu.dim != map.dim()) throw InvalidInput("pushforward: dimension mismatch");
  if (samples < 1) throw InvalidInput("pushforward: samples must be >= 1");
  const Grid grid = mu.grid();
  const auto s_count = static_cast<std::size_t>(samples);
  constexpr auto kSkip = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dest(grid.size() * s_count, kSkip);
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long bb = 0; bb < count; ++bb) {
    const auto box = static_cast<std::size_t>(bb);
    if (mu.masses[box] == 0.0) continue;
    const auto pts = box_samples(grid, box, samples, nullptr);
    for (std::size_t s = 0; s < s_count; ++s)
      dest[box * s_count + s] = static_cast<std::uint32_t>(grid.index_of(map.eval(pts[s])));
  }
  GridMeasure out{mu.dim, mu.resolution, mu.seed, std::vector<double>(grid.size(), 0.0)};
  for (std::size_t box = 0; box < grid.size(); ++box) {
    const double share = mu.masses[box] / samples;
    for (std::size_t s = 0; s < s_count; ++s) {
      const auto d = dest[box * s_count + s];
      if (d != kSkip) out.masses[d] += share;
    }
  }
  return out;
}

double invariance_defect(const MapSpec& map, const GridMeasure& mu, int samples) {
  return tv_distance(mu, pushforward(map, mu, samples));
}

namespace serial {

UlamOperator build_ulam(const MapSpec& map, int resolution, int samples, std::uint64_t seed) {
  check_build_args(map, resolution, samples);
  check_audit(map);
  const Grid grid(map.dim(), resolution);
  std::vector<std::vector<UlamOperator::Entry>> rows(grid.size());
  for (std::size_t box = 0; box < grid.size(); ++box)
    rows[box] = assemble_ulam_row(map, grid, box, samples, seed);
  return UlamOperator(map.dim(), resolution, samples, std::move(rows));
}

void apply(const UlamOperator& op, std::span<const double> mu, std::span<double> out) {
  if (mu.size() != op.size() || out.size() != op.size())
    throw InvalidInput("serial::apply: size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < op.size(); ++i) {
    const auto cols = op.row_cols(i);
    const auto w = op.row_weights(i);
    for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] += mu[i] * w[k];
  }
}

PowerResult power_iterate(const UlamOperator& op, const GridMeasure& init, double tol,
                          int max_iters) {
  return iterate(op, init, tol, max_iters,
                 [&](const std::vector<double>& in, std::vector<double>& out) {
                   serial::apply(op, in, out);
                 });
}

GridMeasure pushforward(const MapSpec& map, const GridMeasure& mu, int samples) {
  if (mu.dim != map.dim()) throw InvalidInput("pushforward: dimension mismatch");
  if (samples < 1) throw InvalidInput("pushforward: samples must be >= 1");
  const Grid grid = mu.grid();
  GridMeasure out{mu.dim, mu.resolution, mu.seed, std::vector<double>(grid.size(), 0.0)};
  for (std::size_t box = 0; box < grid.size(); ++box) {
    if (mu.masses[box] == 0.0) continue;
    for (const Point& x : box_samples(grid, box, samples, nullptr))
      out.masses[grid.index_of(map.eval(x))] += mu.masses[box] / samples;
  }
  return out;
}

}  // namespace serial

}  // namespace maxent
