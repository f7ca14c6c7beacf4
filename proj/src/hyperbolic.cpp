#include "maxent/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "maxent/branches.hpp"
#include "maxent/errors.hpp"
#include "maxent/sampling.hpp"

namespace maxent {

bool HyperbolicTimeSet::contains(int n) const {
  return std::binary_search(times.begin(), times.end(), n);
}

HyperbolicTimeSet detect_hyperbolic_times(std::span<const double> a, double c) {
  if (!(c > 0.0)) throw InvalidInput("detect_hyperbolic_times: c must be positive");
  HyperbolicTimeSet out;
  out.c = c;
  out.density_profile.reserve(a.size());
  double prefix = 0.0;      // S_m
  double running_min = 0.0; // min_{0<=m<n} S_m, starts at S_0
  std::size_t hits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    prefix += a[i] + 2.0 * c;  // S_{i+1}
    const int n = static_cast<int>(i) + 1;
    if (prefix <= running_min) {
      out.times.push_back(n);
      ++hits;
    }
    running_min = std::min(running_min, prefix);
    out.density_profile.push_back(static_cast<double>(hits) / n);
  }
  return out;
}

HyperbolicTimeSet detect_hyperbolic_times(const OrbitRecord& orbit, double c) {
  const auto n = static_cast<std::size_t>(orbit.length());
  return detect_hyperbolic_times(std::span<const double>(orbit.inv_norm_logs.data(), n), c);
}

DensityCheck density_lower_bound_check(const OrbitRecord& orbit, double c) {
  const int n = orbit.length();
  if (n < 1) throw InvalidInput("density_lower_bound_check: empty orbit");
  DensityCheck out;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += orbit.inv_norm_logs[static_cast<std::size_t>(i)];
  out.average = s / n;
  out.average_below = out.average < -4.0 * c;
  out.terminal_density = detect_hyperbolic_times(orbit, c).terminal_density();
  return out;
}

std::optional<int> time_slice_density(std::span<const HyperbolicTimeSet> sets, int m,
                                      double theta) {
  if (sets.empty()) return std::nullopt;
  std::size_t horizon = std::numeric_limits<std::size_t>::max();
  for (const auto& s : sets) horizon = std::min(horizon, s.density_profile.size());
  for (int n = m + 1; n <= static_cast<int>(horizon); ++n) {
    std::size_t count = 0;
    for (const auto& s : sets) count += s.contains(n) ? 1 : 0;
    if (static_cast<double>(count) / static_cast<double>(sets.size()) > theta) return n;
  }
  return std::nullopt;
}

namespace {

Point nearest_preimage(const MapSpec& map, const Point& y, const Point& anchor, int time,
                       int step) {
  const auto pre = inverse_branches(map, y);
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const double d = torus_distance(pre[i], anchor);
    if (d < best) {
      second = best;
      best = d;
      best_i = i;
    } else if (d < second) {
      second = d;
    }
  }
  if (pre.size() > 1 && second - best < 1e-9) {
    throw AmbiguityError(time, step,
                         "ambiguous inverse branch at hyperbolic time " + std::to_string(time) +
                             ", step " + std::to_string(step) + " near " + anchor.to_string());
  }
  return pre[best_i];
}

Point offset_point(int dim, const Point& base, double radius, RandomStream& rng) {
  if (dim == 1) return Point(base[0] + radius * (2.0 * rng.uniform() - 1.0));
  const double r = radius * std::sqrt(rng.uniform());
  const double t = 2.0 * std::numbers::pi * rng.uniform();
  return Point(base[0] + r * std::cos(t), base[1] + r * std::sin(t));
}

std::vector<int> sample_times(const std::vector<int>& times, int max_times) {
  if (static_cast<int>(times.size()) <= max_times) return times;
  std::vector<int> out;
  for (int k = 0; k < max_times; ++k) {
    const auto idx = static_cast<std::size_t>(k) * (times.size() - 1) /
                     static_cast<std::size_t>(std::max(1, max_times - 1));
    out.push_back(times[idx]);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ContractionReport verify_contraction(const MapSpec& map, const OrbitRecord& orbit,
                                     const HyperbolicTimeSet& hts,
                                     const ContractionOptions& opt) {
  if (hts.times.empty()) throw InvalidInput("verify_contraction: no hyperbolic times");
  if (!(opt.delta0 > 0.0)) throw InvalidInput("verify_contraction: delta0 must be positive");
  if (opt.pairs < 1) throw InvalidInput("verify_contraction: pairs must be >= 1");
  ContractionReport rep;
  rep.delta0 = opt.delta0;
  RandomStream rng(derive_seed(opt.seed, 0xc0c7));
  for (int n : sample_times(hts.times, opt.max_times)) {
    if (n > orbit.length()) continue;
    ++rep.times_tested;
    const Point& target = orbit.points[static_cast<std::size_t>(n)];
    for (int pair = 0; pair < opt.pairs; ++pair) {
      Point z = offset_point(map.dim(), target, opt.delta0, rng);
      Point w = offset_point(map.dim(), target, opt.delta0, rng);
      const double d0 = torus_distance(z, w);
      if (d0 == 0.0) continue;
      double prev = d0;
      const int depth = std::min(n, opt.max_depth);
      for (int j = 1; j <= depth; ++j) {
        const Point& anchor = orbit.points[static_cast<std::size_t>(n - j)];
        z = nearest_preimage(map, z, anchor, n, j);
        w = nearest_preimage(map, w, anchor, n, j);
        const double dj = torus_distance(z, w);
        const double bound = std::exp(-j * hts.c) * d0;
        const double ratio = dj / bound;
        ++rep.checks;
        if (ratio <= 1.0 + opt.slack) ++rep.passed;
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (prev > 0.0) rep.worst_step_ratio = std::max(rep.worst_step_ratio, dj / prev);
        prev = dj;
        if (dj < 1e-9) break;
      }
    }
  }
  rep.pass_fraction = rep.checks > 0 ? static_cast<double>(rep.passed) / rep.checks : 0.0;
  return rep;
}

ContractionReport verify_contraction_adaptive(const MapSpec& map, const OrbitRecord& orbit,
                                              const HyperbolicTimeSet& hts,
                                              ContractionOptions options) {
  ContractionReport rep = verify_contraction(map, orbit, hts, options);
  for (int halving = 0; halving < 5 && rep.pass_fraction < 1.0; ++halving) {
    options.delta0 *= 0.5;
    rep = verify_contraction(map, orbit, hts, options);
  }
  return rep;
}

}  // namespace maxent
