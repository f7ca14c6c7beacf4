#include "maxent/grid_measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "maxent/errors.hpp"

namespace maxent {

GridMeasure GridMeasure::uniform(int dim, int resolution) {
  const Grid g(dim, resolution);
  GridMeasure mu{dim, resolution, 0, std::vector<double>(g.size(), 1.0 / static_cast<double>(g.size()))};
  return mu;
}

GridMeasure GridMeasure::point_mass(int dim, int resolution, std::size_t box) {
  const Grid g(dim, resolution);
  if (box >= g.size()) throw InvalidInput("point_mass: box index out of range");
  GridMeasure mu{dim, resolution, 0, std::vector<double>(g.size(), 0.0)};
  mu.masses[box] = 1.0;
  return mu;
}

void GridMeasure::validate(double tol) const {
  const Grid g(dim, resolution);
  if (masses.size() != g.size()) throw InvalidInput("GridMeasure: wrong number of masses");
  double total = 0.0;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0.0) throw InvalidInput("GridMeasure: negative or non-finite mass");
    total += m;
  }
  if (std::abs(total - 1.0) > tol) throw InvalidInput("GridMeasure: masses do not sum to 1");
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("tv_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

double tv_distance(const GridMeasure& a, const GridMeasure& b) {
  if (a.dim != b.dim || a.resolution != b.resolution)
    throw InvalidInput("tv_distance: measures live on different grids");
  return tv_distance(std::span<const double>(a.masses), std::span<const double>(b.masses));
}

GridMeasure coarsen(const GridMeasure& mu, int factor) {
  if (factor < 1 || mu.resolution % factor != 0)
    throw InvalidInput("coarsen: resolution not divisible by factor");
  const Grid fine = mu.grid();
  GridMeasure out{mu.dim, mu.resolution / factor, mu.seed, {}};
  const Grid coarse = out.grid();
  out.masses.assign(coarse.size(), 0.0);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto m = fine.multi_index(i);
    m[0] /= factor;
    m[1] /= factor;
    out.masses[coarse.index_of(m)] += mu.masses[i];
  }
  return out;
}

std::vector<Point> sample_from_measure(const GridMeasure& mu, int count, std::uint64_t seed) {
  const Grid g = mu.grid();
  std::vector<double> cdf(mu.masses.size());
  std::partial_sum(mu.masses.begin(), mu.masses.end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  if (!(total > 0.0)) throw InvalidInput("sample_from_measure: measure has no mass");
  RandomStream rng(derive_seed(seed, 0x5a3b1e));
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip empty boxes that share a cdf value with their successor.
    auto box = static_cast<std::size_t>(it - cdf.begin());
    while (mu.masses[box] == 0.0 && box + 1 < cdf.size()) ++box;
    const Vec c = g.lower_corner(box);
    const double h = g.spacing();
    if (mu.dim == 1) {
      out.emplace_back(c[0] + rng.uniform() * h);
    } else {
      const double ux = rng.uniform();
      const double uy = rng.uniform();
      out.emplace_back(c[0] + ux * h, c[1] + uy * h);
    }
  }
  return out;
}

double default_mass_floor(const GridMeasure& mu) {
  return 1e-3 / static_cast<double>(mu.grid().size());
}

std::string to_document(const GridMeasure& mu) {
  std::ostringstream os;
  os << "{\n  \"dim\": " << mu.dim << ",\n  \"resolution\": " << mu.resolution
     << ",\n  \"seed\": " << mu.seed << ",\n  \"masses\": [";
  char buf[40];
  for (std::size_t i = 0; i < mu.masses.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", mu.masses[i]);
    os << (i == 0 ? "" : ", ") << ((i % 8 == 0) ? "\n    " : "") << buf;
  }
  os << "\n  ]\n}\n";
  return os.str();
}

GridMeasure measure_from_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("measure document: ") + e.what());
  }
  GridMeasure mu;
  try {
    mu.dim = doc.at("dim").get<int>();
    mu.resolution = doc.at("resolution").get<int>();
    mu.seed = doc.at("seed").get<std::uint64_t>();
    mu.masses = doc.at("masses").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("measure document: ") + e.what());
  }
  mu.validate(1e-9);
  return mu;
}

void write_measure(const GridMeasure& mu, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << to_document(mu);
}

GridMeasure read_measure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return measure_from_document(ss.str());
}

}  // namespace maxent
