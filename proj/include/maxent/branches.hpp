#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxent/maps.hpp"

namespace maxent {

/// Residual bound for accepted preimages (torus distance of f(z) to y).
inline constexpr double kRootTolerance = 1e-10;
/// Two Newton roots closer than this are the same preimage.
inline constexpr double kDedupTolerance = 1e-6;

/// All `degree` preimages of y. With a branch hint the result is ordered by
/// residue class m of the linear part (row-major over m); otherwise
/// preimages come from multi-start damped Newton and are sorted
/// lexicographically. Throws BranchFailure when a class cannot be solved to
/// kRootTolerance or the generic search finds the wrong count.
std::vector<Point> inverse_branches(const MapSpec& map, const Point& y);

/// Number of distinct Newton roots of f(z) = y from a uniform seed grid of
/// ceil(seeds^(1/d))^d starts. Independent of the branch hint, so it serves
/// as an audit of the declared degree.
std::size_t count_preimages(const MapSpec& map, const Point& y, int seeds);

/// ceil(4 p^(1/d))^d, the default seed budget for generic root finding.
int default_seed_count(const MapSpec& map);

/// Damped Newton for f(z) = y on the torus starting at the lift `start`.
std::optional<Point> newton_preimage(const MapSpec& map, const Point& y, Vec start);

struct DegreeAudit {
  bool ok = true;
  std::vector<Point> points;
  std::vector<std::size_t> counts;
};

/// count_preimages at `points` pseudorandom targets, compared to degree().
DegreeAudit audit_degree(const MapSpec& map, int points = 20, std::uint64_t seed = 0);

}  // namespace maxent
