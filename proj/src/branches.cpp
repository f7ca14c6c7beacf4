#include "maxent/branches.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxent/errors.hpp"
#include "maxent/sampling.hpp"

namespace maxent {

namespace {

double residual_norm(const MapSpec& map, const Vec& z, const Point& y) {
  const Vec fz = map.eval_lift(z);
  const double r0 = wrap_signed(fz[0] - y[0]);
  const double r1 = map.dim() == 2 ? wrap_signed(fz[1] - y[1]) : 0.0;
  return std::hypot(r0, r1);
}

bool accept(const MapSpec& map, const Point& z, const Point& y) {
  return torus_distance(map.eval(z), y) <= kRootTolerance;
}

// Fixed-point iteration z <- A^{-1}(y + m - eps g(z)) for one residue class.
std::optional<Point> hinted_branch(const MapSpec& map, const BranchHint& hint, const Point& y,
                                   const std::array<int, kMaxDim>& m) {
  const int d = map.dim();
  Vec z{};
  for (int k = 0; k < d; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    z[ku] = (y[k] + m[ku]) / hint.diag[ku];
  }
  if (hint.g != Perturbation::none && hint.eps != 0.0) {
    for (int it = 0; it < 200; ++it) {
      const Vec g = perturbation_value(hint.g, d, z);
      double step = 0.0;
      for (int k = 0; k < d; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const double next = (y[k] + m[ku] - hint.eps * g[ku]) / hint.diag[ku];
        step = std::max(step, std::abs(next - z[ku]));
        z[ku] = next;
      }
      if (step < 1e-12) break;
    }
  }
  const Point candidate = Point::from_lift(d, z);
  if (accept(map, candidate, y)) return candidate;
  // Fixed-point iteration does not contract for large eps; polish with Newton.
  return newton_preimage(map, y, z);
}

std::vector<Point> newton_roots(const MapSpec& map, const Point& y, int per_axis) {
  const int d = map.dim();
  std::vector<Point> roots;
  const int total = d == 1 ? per_axis : per_axis * per_axis;
  for (int s = 0; s < total; ++s) {
    const int i = d == 1 ? s : s / per_axis;
    const int j = d == 1 ? 0 : s % per_axis;
    const Vec start{(i + 0.5) / per_axis, (j + 0.5) / per_axis};
    const auto root = newton_preimage(map, y, start);
    if (!root) continue;
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const Point& r) {
      return torus_distance(r, *root) < kDedupTolerance;
    });
    if (!duplicate) roots.push_back(*root);
  }
  return roots;
}

int per_axis_for(int dim, int seeds) {
  if (dim == 1) return std::max(1, seeds);
  int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(seeds)) - 1e-12));
  while (k * k < seeds) ++k;
  return std::max(1, k);
}

}  // namespace

std::optional<Point> newton_preimage(const MapSpec& map, const Point& y, Vec z) {
  const int d = map.dim();
  double res = residual_norm(map, z, y);
  for (int it = 0; it < 60 && res > 1e-14; ++it) {
    const Vec fz = map.eval_lift(z);
    const Vec r{wrap_signed(fz[0] - y[0]), d == 2 ? wrap_signed(fz[1] - y[1]) : 0.0};
    const Mat jac = map.derivative_lift(z);
    if (std::abs(det(jac)) < 1e-14) return std::nullopt;
    const Vec step = inverse(jac) * r;
    double t = 1.0;
    Vec trial{};
    double trial_res = 0.0;
    for (;;) {
      trial = {z[0] - t * step[0], z[1] - t * step[1]};
      trial_res = residual_norm(map, trial, y);
      if (trial_res < res || t < 1.0 / 1024.0) break;
      t *= 0.5;
    }
    if (!(trial_res < res)) break;
    z = trial;
    res = trial_res;
  }
  const Point root = Point::from_lift(d, z);
  if (!accept(map, root, y)) return std::nullopt;
  return root;
}

int default_seed_count(const MapSpec& map) {
  const double p = map.degree();
  const int k = static_cast<int>(std::ceil(4.0 * std::pow(p, 1.0 / map.dim()) - 1e-9));
  return map.dim() == 1 ? k : k * k;
}

std::vector<Point> inverse_branches(const MapSpec& map, const Point& y) {
  if (y.dim() != map.dim()) throw InvalidInput("inverse_branches: dimension mismatch");
  const auto& hint = map.branch_hint();
  if (hint) {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(map.degree()));
    const int rows = hint->diag[0];
    const int cols = map.dim() == 2 ? hint->diag[1] : 1;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const auto z = hinted_branch(map, *hint, y, {i, j});
        const auto cls = static_cast<std::size_t>(i * cols + j);
        if (!z) {
          throw BranchFailure(cls, "inverse branch " + std::to_string(cls) + " of " + map.name() +
                                       " failed to converge at " + y.to_string());
        }
        out.push_back(*z);
      }
    }
    return out;
  }
  const int per_axis = per_axis_for(map.dim(), default_seed_count(map));
  auto roots = newton_roots(map, y, per_axis);
  if (roots.size() != static_cast<std::size_t>(map.degree())) {
    throw BranchFailure(roots.size(), "generic root search found " + std::to_string(roots.size()) +
                                          " preimages of " + y.to_string() + ", expected " +
                                          std::to_string(map.degree()));
  }
  std::sort(roots.begin(), roots.end(),
            [](const Point& a, const Point& b) { return a.coords() < b.coords(); });
  return roots;
}

std::size_t count_preimages(const MapSpec& map, const Point& y, int seeds) {
  if (y.dim() != map.dim()) throw InvalidInput("count_preimages: dimension mismatch");
  if (seeds < map.degree()) throw InvalidInput("count_preimages: fewer seeds than the degree");
  const auto roots = newton_roots(map, y, per_axis_for(map.dim(), seeds));
  if (roots.empty()) {
    throw BranchFailure(0, "count_preimages: no seed converged at " + y.to_string());
  }
  return roots.size();
}

DegreeAudit audit_degree(const MapSpec& map, int points, std::uint64_t seed) {
  DegreeAudit audit;
  RandomStream rng(derive_seed(seed, 0xa0d17));
  const int seeds = default_seed_count(map);
  for (int i = 0; i < points; ++i) {
    const Point y = map.dim() == 1 ? Point(rng.uniform()) : Point(rng.uniform(), rng.uniform());
    const std::size_t n = count_preimages(map, y, seeds);
    audit.points.push_back(y);
    audit.counts.push_back(n);
    if (n != static_cast<std::size_t>(map.degree())) audit.ok = false;
  }
  return audit;
}

}  // namespace maxent
