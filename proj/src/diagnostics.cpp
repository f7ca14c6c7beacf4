#include "maxent/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/errors.hpp"

namespace maxent {

MixingReport mixing_check(const MapSpec& map, int resolution, std::size_t start_box, int max_iter,
                          int samples) {
  const Grid grid(map.dim(), resolution);
  if (start_box >= grid.size()) throw InvalidInput("mixing_check: start box out of range");
  if (samples < 1) throw InvalidInput("mixing_check: samples must be >= 1");
  // Image boxes of every box, computed once.
  const auto s_count = static_cast<std::size_t>(samples);
  std::vector<std::uint32_t> image(grid.size() * s_count);
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long bb = 0; bb < count; ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    const auto pts = box_samples(grid, b, samples, nullptr);
    for (std::size_t s = 0; s < s_count; ++s)
      image[b * s_count + s] = static_cast<std::uint32_t>(grid.index_of(map.eval(pts[s])));
  }

  MixingReport rep;
  rep.start_box = start_box;
  std::vector<char> covered(grid.size(), 0);
  covered[start_box] = 1;
  for (int k = 1; k <= max_iter; ++k) {
    std::vector<char> next(grid.size(), 0);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (!covered[b]) continue;
      for (std::size_t s = 0; s < s_count; ++s) next[image[b * s_count + s]] = 1;
    }
    covered.swap(next);
    const auto hit = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
    rep.coverage_profile.push_back(static_cast<double>(hit) / static_cast<double>(grid.size()));
    if (hit == grid.size()) {
      rep.n_mix = k;
      break;
    }
  }
  return rep;
}

MixingReport mixing_check_all_starts(const MapSpec& map, int resolution, int max_iter, int samples,
                                     std::uint64_t seed, int starts) {
  const Grid grid(map.dim(), resolution);
  RandomStream rng(derive_seed(seed, 0x313));
  MixingReport worst;
  bool first = true;
  for (int s = 0; s < starts; ++s) {
    auto rep = mixing_check(map, resolution, rng.below(grid.size()), max_iter, samples);
    const int key = rep.n_mix.value_or(std::numeric_limits<int>::max());
    const int worst_key = worst.n_mix.value_or(std::numeric_limits<int>::max());
    if (first || key > worst_key) {
      worst = std::move(rep);
      first = false;
    }
  }
  return worst;
}

SupportReport support_check(const GridMeasure& mu, double mass_floor) {
  const double floor = mass_floor < 0.0 ? default_mass_floor(mu) : mass_floor;
  SupportReport r;
  r.min_mass = mu.masses.empty() ? 0.0 : *std::min_element(mu.masses.begin(), mu.masses.end());
  r.zero_boxes = static_cast<std::size_t>(
      std::count_if(mu.masses.begin(), mu.masses.end(), [&](double m) { return m < floor; }));
  return r;
}

double ball_lower_bound(const GridMeasure& mu, double delta) {
  const Grid grid = mu.grid();
  if (delta < grid.box_diameter() - 1e-15)
    throw InvalidInput("ball_lower_bound: delta below grid resolution");
  const int n = grid.resolution();
  // Integer offsets (in boxes) whose center distance is within delta.
  const int reach = std::min(n / 2, static_cast<int>(std::ceil(delta * n)));
  std::vector<std::array<int, kMaxDim>> stencil;
  for (int dx = -reach; dx <= reach; ++dx) {
    for (int dy = (mu.dim == 2 ? -reach : 0); dy <= (mu.dim == 2 ? reach : 0); ++dy) {
      const double dist = std::hypot(static_cast<double>(dx), static_cast<double>(dy)) / n;
      if (dist <= delta + 1e-12) stencil.push_back({dx, dy});
    }
  }
  // Large delta can wrap onto the same box twice; deduplicate per center.
  std::vector<double> ball(grid.size());
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long bb = 0; bb < count; ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    const auto m = grid.multi_index(b);
    std::vector<std::size_t> members;
    members.reserve(stencil.size());
    for (const auto& o : stencil) {
      const std::array<int, kMaxDim> q{((m[0] + o[0]) % n + n) % n,
                                       mu.dim == 2 ? ((m[1] + o[1]) % n + n) % n : 0};
      members.push_back(grid.index_of(q));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    double s = 0.0;
    for (std::size_t k : members) s += mu.masses[k];
    ball[b] = s;
  }
  return *std::min_element(ball.begin(), ball.end());
}

bool UniquenessReport::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

UniquenessReport uniqueness_evidence(const UlamOperator& op, int seeds, double tol,
                                     std::uint64_t master_seed, int max_iters) {
  if (seeds < 2) throw InvalidInput("uniqueness_evidence: need at least two seeds");
  const std::size_t n = op.size();
  UniquenessReport rep;
  rep.measures.resize(static_cast<std::size_t>(seeds));
  rep.converged.assign(static_cast<std::size_t>(seeds), false);
  // Runs are independent; each one is internally parallel as well.
  for (int k = 0; k < seeds; ++k) {
    RandomStream rng(derive_seed(master_seed, 0x0e1 + static_cast<std::uint64_t>(k)));
    const std::size_t lo = static_cast<std::size_t>(k) * n / static_cast<std::size_t>(seeds);
    const std::size_t hi = static_cast<std::size_t>(k + 1) * n / static_cast<std::size_t>(seeds);
    const std::size_t box = lo + rng.below(std::max<std::size_t>(1, hi - lo));
    const auto init = GridMeasure::point_mass(op.dim(), op.resolution(), std::min(box, n - 1));
    auto res = power_iterate(op, init, tol, max_iters);
    rep.measures[static_cast<std::size_t>(k)] = std::move(res.measure);
    rep.converged[static_cast<std::size_t>(k)] = res.converged;
  }
  for (std::size_t i = 0; i < rep.measures.size(); ++i)
    for (std::size_t j = i + 1; j < rep.measures.size(); ++j)
      rep.max_pairwise_tv = std::max(rep.max_pairwise_tv, tv_distance(rep.measures[i], rep.measures[j]));
  return rep;
}

}  // namespace maxent
