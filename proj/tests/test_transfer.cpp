#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "maxent/errors.hpp"
#include "maxent/grid_measure.hpp"
#include "maxent/maps.hpp"
#include "maxent/reference.hpp"
#include "maxent/ulam.hpp"
#include "oracles.hpp"

using namespace maxent;

namespace {

std::vector<std::vector<double>> dense(const UlamOperator& op) {
  std::vector<std::vector<double>> t(op.size(), std::vector<double>(op.size(), 0.0));
  for (std::size_t i = 0; i < op.size(); ++i) {
    const auto cols = op.row_cols(i);
    const auto w = op.row_weights(i);
    for (std::size_t k = 0; k < cols.size(); ++k) t[i][cols[k]] += w[k];
  }
  return t;
}

}  // namespace

TEST_CASE("grid measures") {
  const auto u = GridMeasure::uniform(1, 64);
  CHECK(u.masses[5] == doctest::Approx(1.0 / 64));
  CHECK_NOTHROW(u.validate());
  const auto pm = GridMeasure::point_mass(2, 4, 5);
  CHECK(tv_distance(u.masses, u.masses) == 0.0);
  CHECK(tv_distance(pm, GridMeasure::point_mass(2, 4, 6)) == doctest::Approx(1.0));
  GridMeasure bad = u;
  bad.masses[0] = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  const auto c = coarsen(GridMeasure::uniform(2, 8), 2);
  CHECK(c.resolution == 4);
  CHECK(c.masses[3] == doctest::Approx(1.0 / 16));
}

TEST_CASE("measure documents round-trip exactly") {
  GridMeasure mu = GridMeasure::uniform(2, 4);
  mu.masses[0] = 0.1;
  mu.masses[1] = 1.0 / 16 + (1.0 / 16 - 0.1);
  mu.seed = 42;
  const GridMeasure back = measure_from_document(to_document(mu));
  CHECK(back.dim == 2);
  CHECK(back.resolution == 4);
  CHECK(back.seed == 42);
  CHECK(back.masses == mu.masses);
  const auto path = std::filesystem::temp_directory_path() / "maxent_measure_roundtrip.json";
  write_measure(mu, path.string());
  CHECK(read_measure(path.string()).masses == mu.masses);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(measure_from_document("{\"dim\": 3}"), InvalidInput);
}

TEST_CASE("Ulam rows are stochastic") {
  for (const MapSpec& map : {doubling_map(), perturbed_circle_map(3, 0.05), perturbed_torus_map(3, 0.05)}) {
    const int n = map.dim() == 1 ? 256 : 32;
    const auto op = build_ulam(map, n, 16, 1);
    for (std::size_t i = 0; i < op.size(); ++i) CHECK(std::abs(op.row_sum(i) - 1.0) <= 1e-12);
  }
}

TEST_CASE("Ulam matrix of the doubling map at N=4") {
  // Row i sends 1/2 to box floor(i/2) and 1/2 to box 2 + floor(i/2).
  const auto t = dense(build_ulam(doubling_map(), 4, 32, 0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected = (j == i / 2 || j == 2 + i / 2) ? 0.5 : 0.0;
      CHECK(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == doctest::Approx(expected));
    }
  }
}

TEST_CASE("Ulam rows of (3x,3y) at N=3 are uniform") {
  const auto t = dense(build_ulam(linear_torus_map(3), 3, 16, 0));
  for (const auto& row : t)
    for (double w : row) CHECK(w == doctest::Approx(1.0 / 9));
}

TEST_CASE("uniform is a fixed point for linear maps") {
  for (const MapSpec& map : {doubling_map(), circle_linear_map(3), linear_torus_map(3)}) {
    const int n = map.dim() == 1 ? 1024 : 64;
    const auto op = build_ulam(map, n, 32, 0);
    const auto r = power_iterate(op, GridMeasure::uniform(map.dim(), n));
    CHECK(r.converged);
    CHECK(tv_distance(r.measure, GridMeasure::uniform(map.dim(), n)) <= 1e-12);
    CHECK(eigen_residual(map, r.measure, op) <= 1e-12);
  }
}

TEST_CASE("power iteration agrees with a dense oracle") {
  const MapSpec map = perturbed_circle_map(2, 0.05);
  const auto op = build_ulam(map, 32, 16, 5);
  const auto r = power_iterate(op, GridMeasure::uniform(1, 32), 1e-13);
  REQUIRE(r.converged);
  const auto ref = oracle::stationary_dense(dense(op), 2000);
  CHECK(tv_distance(r.measure.masses, ref) <= 1e-11);
  CHECK(eigen_residual(map, r.measure, op) == doctest::Approx(r.residual_history.back()).epsilon(1e-6));
}

TEST_CASE("zero iteration budget returns the initial vector unconverged") {
  const auto op = build_ulam(doubling_map(), 16, 4, 0);
  const auto init = GridMeasure::point_mass(1, 16, 3);
  const auto r = power_iterate(op, init, 1e-10, 0);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.measure.masses == init.masses);
}

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  const MapSpec map = perturbed_torus_map(3, 0.05);
  const auto par = build_ulam(map, 24, 16, 9);
  const auto ser = serial::build_ulam(map, 24, 16, 9);
  REQUIRE(par.size() == ser.size());
  REQUIRE(par.nnz() == ser.nnz());
  for (std::size_t i = 0; i < par.size(); ++i) {
    const auto a = par.row_cols(i), b = ser.row_cols(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    const auto wa = par.row_weights(i), wb = ser.row_weights(i);
    CHECK(std::equal(wa.begin(), wa.end(), wb.begin(), wb.end()));
  }
  const auto init = GridMeasure::point_mass(2, 24, 17);
  std::vector<double> x(par.size()), y(par.size());
  par.apply(init.masses, x);
  serial::apply(ser, init.masses, y);
  CHECK(x == y);
  const auto rp = power_iterate(par, init);
  const auto rs = serial::power_iterate(ser, init);
  CHECK(rp.iterations == rs.iterations);
  CHECK(rp.measure.masses == rs.measure.masses);
  CHECK(pushforward(map, rp.measure, 16).masses == serial::pushforward(map, rp.measure, 16).masses);
}

TEST_CASE("assembly is reproducible per seed") {
  const MapSpec map = perturbed_circle_map(3, 0.05);
  const auto a = build_ulam(map, 128, 8, 3);
  const auto b = build_ulam(map, 128, 8, 3);
  const auto c = build_ulam(map, 128, 8, 4);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto wa = a.row_weights(i), wb = b.row_weights(i), wc = c.row_weights(i);
    same = same && std::equal(wa.begin(), wa.end(), wb.begin(), wb.end());
    differs = differs || !std::equal(wa.begin(), wa.end(), wc.begin(), wc.end());
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("eigenmeasure is stable under refinement") {
  const MapSpec map = perturbed_circle_map(3, 0.05);
  const auto coarse = power_iterate(build_ulam(map, 256, 32, 0), GridMeasure::uniform(1, 256));
  const auto fine = power_iterate(build_ulam(map, 512, 32, 0), GridMeasure::uniform(1, 512));
  REQUIRE(coarse.converged);
  REQUIRE(fine.converged);
  CHECK(tv_distance(coarsen(fine.measure, 2), coarse.measure) <= 0.02);
}

TEST_CASE("pushforward") {
  SUBCASE("uniform is invariant under the doubling map") {
    const auto u = GridMeasure::uniform(1, 64);
    CHECK(tv_distance(pushforward(doubling_map(), u, 8), u) <= 1e-12);
  }
  SUBCASE("the fixed-point box splits over its image") {
    // [0, 1/N) maps onto [0, 2/N): half the mass stays, half moves to box 1.
    const auto mu = pushforward(doubling_map(), GridMeasure::point_mass(1, 64, 0), 8);
    CHECK(mu.masses[0] == doctest::Approx(0.5));
    CHECK(mu.masses[1] == doctest::Approx(0.5));
  }
  SUBCASE("mass is conserved") {
    const auto mu = pushforward(perturbed_torus_map(3, 0.05), GridMeasure::uniform(2, 32), 16);
    double total = 0.0;
    for (double m : mu.masses) total += m;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bad assembly arguments") {
  CHECK_THROWS_AS(build_ulam(doubling_map(), 0, 8, 0), InvalidInput);
  CHECK_THROWS_AS(build_ulam(doubling_map(), 16, 0, 0), InvalidInput);
}
