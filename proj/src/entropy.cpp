#include "maxent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "maxent/branches.hpp"
#include "maxent/errors.hpp"
#include "maxent/linalg.hpp"

namespace maxent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double resolve_floor(const GridMeasure& mu, double mass_floor) {
  return mass_floor < 0.0 ? default_mass_floor(mu) : mass_floor;
}

// Every lattice point of a box must be the only preimage of its image inside
// that box; otherwise f is not injective at grid scale.
void audit_injectivity(const MapSpec& map, const Grid& grid, int samples) {
  const std::size_t probes = std::min<std::size_t>(16, grid.size());
  for (std::size_t k = 0; k < probes; ++k) {
    const std::size_t box = k * grid.size() / probes;
    for (const Point& s : box_lattice(grid, box, samples)) {
      int inside = 0;
      for (const Point& z : inverse_branches(map, map.eval(s)))
        inside += grid.index_of(z) == box ? 1 : 0;
      if (inside != 1) {
        throw InvalidInput("estimate_jacobian: " + map.name() + " is not injective on box " +
                           std::to_string(box) + " at resolution " +
                           std::to_string(grid.resolution()));
      }
    }
  }
}

}  // namespace

JacobianField estimate_jacobian(const MapSpec& map, const GridMeasure& mu, int samples,
                                double mass_floor) {
  if (mu.dim != map.dim()) throw InvalidInput("estimate_jacobian: dimension mismatch");
  if (samples < 1) throw InvalidInput("estimate_jacobian: samples must be >= 1");
  const Grid grid = mu.grid();
  audit_injectivity(map, grid, samples);
  const double floor = resolve_floor(mu, mass_floor);

  JacobianField field{mu.dim, mu.resolution, std::vector<double>(grid.size(), kNaN),
                      std::vector<bool>(grid.size(), false), 0};
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long long bb = 0; bb < count; ++bb) {
    const auto box = static_cast<std::size_t>(bb);
    if (mu.masses[box] < floor || mu.masses[box] <= 0.0) continue;
    const auto lattice = box_lattice(grid, box, samples);
    const double share = 1.0 / static_cast<double>(lattice.size());
    std::vector<std::pair<std::size_t, double>> cover;
    cover.reserve(lattice.size());
    for (const Point& s : lattice) {
      const double w = std::abs(det(map.derivative(s))) * share;
      cover.emplace_back(grid.index_of(map.eval(s)), w);
    }
    std::sort(cover.begin(), cover.end());
    double image_mass = 0.0;
    for (std::size_t k = 0; k < cover.size();) {
      double frac = 0.0;
      std::size_t m = k;
      for (; m < cover.size() && cover[m].first == cover[k].first; ++m) frac += cover[m].second;
      image_mass += mu.masses[cover[k].first] * frac;
      k = m;
    }
    field.values[box] = image_mass / mu.masses[box];
    field.support_mask[box] = true;
  }
  field.excluded = static_cast<std::size_t>(
      std::count(field.support_mask.begin(), field.support_mask.end(), false));
  return field;
}

JacobianStats check_jacobian_constant(const JacobianField& field, int degree) {
  std::vector<double> vals;
  for (std::size_t i = 0; i < field.values.size(); ++i)
    if (field.support_mask[i]) vals.push_back(field.values[i]);
  if (vals.empty()) throw InvalidInput("check_jacobian_constant: empty support");
  JacobianStats st;
  st.supported = vals.size();
  for (double v : vals) st.max_rel_dev = std::max(st.max_rel_dev, std::abs(v / degree - 1.0));
  const std::size_t mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + static_cast<long>(mid), vals.end());
  if (vals.size() % 2 == 1) {
    st.median = vals[mid];
  } else {
    const double upper = vals[mid];
    const double lower = *std::max_element(vals.begin(), vals.begin() + static_cast<long>(mid));
    st.median = 0.5 * (lower + upper);
  }
  return st;
}

double rokhlin_entropy(const JacobianField& field, const GridMeasure& mu) {
  if (field.dim != mu.dim || field.resolution != mu.resolution)
    throw InvalidInput("rokhlin_entropy: field and measure resolutions differ");
  double acc = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (!field.support_mask[i]) continue;
    const double j = field.values[i];
    if (!(j > 0.0)) throw InvalidInput("rokhlin_entropy: non-positive Jacobian on supported box");
    acc += mu.masses[i] * std::log(j);
    mass += mu.masses[i];
  }
  if (!(mass > 0.0)) throw InvalidInput("rokhlin_entropy: empty support");
  return acc / mass;
}

PreimageSumStats preimage_sum_identity(const MapSpec& map, const JacobianField& field, int samples,
                                       std::uint64_t seed) {
  if (field.dim != map.dim()) throw InvalidInput("preimage_sum_identity: dimension mismatch");
  const Grid grid = field.grid();
  RandomStream rng(derive_seed(seed, 0x5e5));
  PreimageSumStats st;
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point x = map.dim() == 1 ? Point(rng.uniform()) : Point(rng.uniform(), rng.uniform());
    double sum = 0.0;
    bool skip = false;
    for (const Point& y : inverse_branches(map, x)) {
      const std::size_t b = grid.index_of(y);
      if (!field.support_mask[b]) {
        skip = true;
        break;
      }
      sum += 1.0 / field.values[b];
    }
    if (skip) {
      ++st.skipped;
      continue;
    }
    ++st.evaluated;
    total += sum;
    st.max_dev = std::max(st.max_dev, std::abs(sum - 1.0));
  }
  st.mean = st.evaluated > 0 ? total / static_cast<double>(st.evaluated) : kNaN;
  return st;
}

double jensen_gap(const MapSpec& map, const JacobianField& field, const GridMeasure& mu,
                  int samples, std::uint64_t seed) {
  const Grid grid = field.grid();
  const auto xs = sample_from_measure(mu, samples, derive_seed(seed, 0x7e5));
  const double p = map.degree();
  double total = 0.0;
  long used = 0;
  for (const Point& x : xs) {
    std::vector<double> g;
    bool skip = false;
    for (const Point& y : inverse_branches(map, x)) {
      const std::size_t b = grid.index_of(y);
      if (!field.support_mask[b]) {
        skip = true;
        break;
      }
      g.push_back(1.0 / field.values[b]);
    }
    if (skip) continue;
    double norm = 0.0;
    for (double v : g) norm += v;
    double kl = 0.0;
    for (double v : g) {
      const double q = v / norm;
      if (q > 0.0) kl += q * std::log(p * q);
    }
    total += std::max(0.0, kl);
    ++used;
  }
  return used > 0 ? total / static_cast<double>(used) : kNaN;
}

std::vector<BrinKatokEntry> brin_katok_profile(const MapSpec& map, const GridMeasure& mu,
                                               std::span<const double> eps_list, int n_max,
                                               int base_points, std::uint64_t seed,
                                               double mass_floor) {
  if (mu.dim != map.dim()) throw InvalidInput("brin_katok_profile: dimension mismatch");
  if (n_max < 1) throw InvalidInput("brin_katok_profile: n_max must be >= 1");
  if (base_points < 1) throw InvalidInput("brin_katok_profile: need at least one base point");
  const Grid grid = mu.grid();
  const double floor = resolve_floor(mu, mass_floor);
  if (std::pow(static_cast<double>(map.degree()), -n_max) < 10.0 * floor)
    throw InvalidInput("brin_katok_profile: n_max too large for the grid resolution");
  for (double e : eps_list)
    if (e < 2.0 * grid.box_diameter())
      throw InvalidInput("brin_katok_profile: eps below twice the box diameter");

  const auto nb = static_cast<std::size_t>(n_max);
  // Center orbits, row b holds f^i(c_b) for i < n_max.
  std::vector<Point> center_orbits(grid.size() * nb);
  const auto count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long bb = 0; bb < count; ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    Point c = grid.center(b);
    for (std::size_t i = 0; i < nb; ++i) {
      center_orbits[b * nb + i] = c;
      c = map.eval(c);
    }
  }

  const auto bases = sample_from_measure(mu, base_points, derive_seed(seed, 0xb4));
  std::vector<BrinKatokEntry> table;
  std::vector<int> exit_time(grid.size());
  for (double eps : eps_list) {
    std::vector<double> mass_sum(nb + 1, 0.0);
    std::vector<bool> empty(nb + 1, false);
    for (const Point& x0 : bases) {
      std::vector<Point> orbit(nb);
      Point x = x0;
      for (std::size_t i = 0; i < nb; ++i) {
        orbit[i] = x;
        x = map.eval(x);
      }
#pragma omp parallel for schedule(static)
      for (long long bb = 0; bb < count; ++bb) {
        const auto b = static_cast<std::size_t>(bb);
        int t = 0;
        while (t < n_max && torus_distance(center_orbits[b * nb + static_cast<std::size_t>(t)],
                                           orbit[static_cast<std::size_t>(t)]) < eps)
          ++t;
        exit_time[b] = t;
      }
      // mass_in[n] = mass of boxes that stay close for at least n steps.
      std::vector<double> mass_in(nb + 2, 0.0);
      for (std::size_t b = 0; b < grid.size(); ++b)
        mass_in[static_cast<std::size_t>(exit_time[b])] += mu.masses[b];
      for (std::size_t n = nb; n >= 1; --n) mass_in[n - 1] += mass_in[n];
      std::vector<std::size_t> boxes_in(nb + 2, 0);
      for (std::size_t b = 0; b < grid.size(); ++b) ++boxes_in[static_cast<std::size_t>(exit_time[b])];
      for (std::size_t n = nb; n >= 1; --n) boxes_in[n - 1] += boxes_in[n];
      for (std::size_t n = 1; n <= nb; ++n) {
        mass_sum[n] += mass_in[n];
        if (boxes_in[n] == 0) empty[n] = true;
      }
    }
    const double m1 = mass_sum[1] / static_cast<double>(bases.size());
    for (std::size_t n = 1; n <= nb; ++n) {
      BrinKatokEntry e;
      e.n = static_cast<int>(n);
      e.eps = eps;
      e.ball_mass = mass_sum[n] / static_cast<double>(bases.size());
      e.below_resolution = empty[n] || !(e.ball_mass > 0.0);
      e.rate = e.ball_mass > 0.0 ? -std::log(e.ball_mass) / static_cast<double>(n) : kNaN;
      e.ratio_rate = (n >= 2 && e.ball_mass > 0.0 && m1 > 0.0)
                         ? -std::log(e.ball_mass / m1) / static_cast<double>(n - 1)
                         : kNaN;
      table.push_back(e);
    }
  }
  return table;
}

std::size_t separated_set_size(const MapSpec& map, double eps, int n, int candidates) {
  if (!(eps > 0.0)) throw InvalidInput("separated_set_size: eps must be positive");
  if (n < 1) throw InvalidInput("separated_set_size: n must be >= 1");
  if (candidates < 1) throw InvalidInput("separated_set_size: candidates must be >= 1");
  const int side = lattice_side(map.dim(), candidates);
  const Grid cand(map.dim(), side);
  const auto nb = static_cast<std::size_t>(n);
  std::vector<Point> orbits(cand.size() * nb);
  const auto count = static_cast<long long>(cand.size());
#pragma omp parallel for schedule(static)
  for (long long kk = 0; kk < count; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    Point x = cand.center(k);
    for (std::size_t i = 0; i < nb; ++i) {
      orbits[k * nb + i] = x;
      x = map.eval(x);
    }
  }

  // Points within eps at time t sit in the same or adjacent cells of width
  // >= eps, so bucketing by (cell at time 0, cell at time n-1) is exact.
  const int cells = std::max(1, static_cast<int>(std::floor(1.0 / eps)));
  const Grid bucket(map.dim(), cells);
  auto key_of = [&](std::size_t c0, std::size_t c1) {
    return static_cast<std::uint64_t>(c0) * bucket.size() + c1;
  };
  auto neighbours = [&](const Point& p) {
    const auto m = bucket.multi_index(bucket.index_of(p));
    std::vector<std::size_t> out;
    const int reach = cells >= 3 ? 1 : cells - 1;
    for (int dx = -reach; dx <= reach; ++dx) {
      for (int dy = (map.dim() == 2 ? -reach : 0); dy <= (map.dim() == 2 ? reach : 0); ++dy) {
        const std::array<int, kMaxDim> q{(m[0] + dx + cells) % cells,
                                         map.dim() == 2 ? (m[1] + dy + cells) % cells : 0};
        out.push_back(bucket.index_of(q));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> selected;
  std::size_t total = 0;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    const Point& first = orbits[k * nb];
    const Point& last = orbits[k * nb + nb - 1];
    bool separated = true;
    for (std::size_t c0 : neighbours(first)) {
      for (std::size_t c1 : neighbours(last)) {
        const auto it = selected.find(key_of(c0, c1));
        if (it == selected.end()) continue;
        for (std::size_t s : it->second) {
          double dn = 0.0;
          for (std::size_t i = 0; i < nb && dn <= eps; ++i)
            dn = std::max(dn, torus_distance(orbits[k * nb + i], orbits[s * nb + i]));
          if (dn <= eps) {
            separated = false;
            break;
          }
        }
        if (!separated) break;
      }
      if (!separated) break;
    }
    if (separated) {
      selected[key_of(bucket.index_of(first), bucket.index_of(last))].push_back(k);
      ++total;
    }
  }
  return total;
}

double separated_set_entropy(const MapSpec& map, double eps, int n, int candidates) {
  return std::log(static_cast<double>(separated_set_size(map, eps, n, candidates))) / n;
}

EntropyVerdict entropy_gap_diagnostic(const EntropyReport& report,
                                      std::span<const double> exponents,
                                      const EntropyTolerances& tol) {
  EntropyVerdict v;
  for (double l : exponents) v.positive_exponent_sum += std::max(0.0, l);
  v.ruelle_ok = report.rokhlin_estimate <= v.positive_exponent_sum + tol.ruelle_slack;
  v.rokhlin_gap = report.rokhlin_estimate - report.log_p;
  v.rokhlin_matches_log_p = std::abs(v.rokhlin_gap) <= tol.rokhlin_rel * report.log_p + 1e-12;
  v.jensen_gap = report.jensen_gap;
  v.jensen_ok = std::isfinite(report.jensen_gap) && report.jensen_gap <= tol.jensen;
  return v;
}

}  // namespace maxent
