#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxent/grid_measure.hpp"
#include "maxent/maps.hpp"

namespace maxent {

/// Per-box estimate of the Jacobian J_mu f = d(mu o f)/d mu. Boxes whose mass
/// is below the floor are unsupported and carry NaN.
struct JacobianField {
  int dim = 1;
  int resolution = 1;
  std::vector<double> values;
  std::vector<bool> support_mask;
  std::size_t excluded = 0;

  Grid grid() const { return Grid(dim, resolution); }
  bool defined(std::size_t box) const { return support_mask[box]; }
};

/// J(A) = mu^(f(A)) / mu(A) per supported box A. The image mass is
/// sum_B mu(B) cover_B, where cover_B, the fraction of box B covered
/// by f(A), is the |det Df|-weighted share of A's lattice points (the full
/// ceil(S^(1/d))^d cell-centered lattice) whose image lands in B.
/// A negative mass_floor selects the default 1e-3 / N^d.
JacobianField estimate_jacobian(const MapSpec& map, const GridMeasure& mu, int samples,
                                double mass_floor = -1.0);

struct JacobianStats {
  double median = 0.0;
  double max_rel_dev = 0.0;  // max |J/p - 1| over supported boxes
  std::size_t supported = 0;
};

JacobianStats check_jacobian_constant(const JacobianField& field, int degree);

/// sum mu(A) log J(A) over supported boxes, divided by the supported mass.
double rokhlin_entropy(const JacobianField& field, const GridMeasure& mu);

struct PreimageSumStats {
  double mean = 0.0;
  double max_dev = 0.0;
  long evaluated = 0;
  long skipped = 0;
};

/// For uniformly sampled x, sum over preimages y of 1 / J(box(y)); this is 1
/// for the Jacobian of any invariant measure.
PreimageSumStats preimage_sum_identity(const MapSpec& map, const JacobianField& field, int samples,
                                       std::uint64_t seed = 0);

/// Mean over x sampled from mu of the Kullback-Leibler divergence between
/// the normalized weights g(y) = 1/J(y) on the preimages of x and the uniform
/// weights 1/p. Zero exactly when J is constant on every fiber.
double jensen_gap(const MapSpec& map, const JacobianField& field, const GridMeasure& mu,
                  int samples, std::uint64_t seed = 0);

struct BrinKatokEntry {
  int n = 0;
  double eps = 0.0;
  double ball_mass = 0.0;  // mu(B_eps(n, x)) averaged over base points
  double rate = 0.0;       // -(1/n) log ball_mass
  double ratio_rate = 0.0; // -(1/(n-1)) log(ball_mass(n) / ball_mass(1)); NaN for n = 1
  bool below_resolution = false;
};

/// Dynamical-ball mass decay. A box belongs to B_eps(n, x) when its center c
/// satisfies d(f^i c, f^i x) < eps for i = 0..n-1. Base points are drawn from
/// mu. Requires eps >= 2 box diameters and p^{-n_max} >= 10 mass_floor.
std::vector<BrinKatokEntry> brin_katok_profile(const MapSpec& map, const GridMeasure& mu,
                                               std::span<const double> eps_list, int n_max,
                                               int base_points, std::uint64_t seed = 0,
                                               double mass_floor = -1.0);

/// Size of the greedy maximal (n, eps)-separated subset of a uniform
/// candidate grid with ceil(candidates^(1/d)) points per axis, in the
/// dynamical metric max_{i<n} d(f^i x, f^i y).
std::size_t separated_set_size(const MapSpec& map, double eps, int n, int candidates);

/// (1/n) log separated_set_size.
double separated_set_entropy(const MapSpec& map, double eps, int n, int candidates);

struct EntropyReport {
  double rokhlin_estimate = 0.0;
  std::vector<BrinKatokEntry> brinkatok_profile;
  double log_p = 0.0;
  double separated_set_estimate = 0.0;
  double jensen_gap = 0.0;
};

struct EntropyTolerances {
  double ruelle_slack = 0.05;
  double rokhlin_rel = 0.05;  // |rokhlin - log p| <= rokhlin_rel * log p
  double jensen = 1e-2;
};

struct EntropyVerdict {
  bool ruelle_ok = false;
  double positive_exponent_sum = 0.0;
  bool rokhlin_matches_log_p = false;
  double rokhlin_gap = 0.0;
  bool jensen_ok = false;
  double jensen_gap = 0.0;
  bool all_ok() const { return ruelle_ok && rokhlin_matches_log_p && jensen_ok; }
};

/// (i) rokhlin <= sum of positive exponents + slack; (ii) rokhlin close to
/// log p; (iii) Jensen gap below tolerance.
EntropyVerdict entropy_gap_diagnostic(const EntropyReport& report,
                                      std::span<const double> exponents,
                                      const EntropyTolerances& tol = {});

}  // namespace maxent
