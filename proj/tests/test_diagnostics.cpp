#include <cmath>
#include <vector>

#include "doctest.h"
#include "maxent/diagnostics.hpp"
#include "maxent/errors.hpp"
#include "maxent/maps.hpp"
#include "maxent/ulam.hpp"

using namespace maxent;

TEST_CASE("mixing times of linear maps") {
  const auto d = mixing_check(doubling_map(), 64, 0, 64, 8);
  REQUIRE(d.n_mix.has_value());
  CHECK(*d.n_mix == 6);
  const auto t = mixing_check(linear_torus_map(3), 81, 0, 64, 16);
  REQUIRE(t.n_mix.has_value());
  CHECK(*t.n_mix == 4);
  for (std::size_t k = 1; k < t.coverage_profile.size(); ++k)
    CHECK(t.coverage_profile[k] >= t.coverage_profile[k - 1]);
  CHECK(t.coverage_profile.back() == 1.0);
}

TEST_CASE("the identity never mixes") {
  const auto r = mixing_check(identity_torus_map(), 16, 5, 20, 4);
  CHECK_FALSE(r.n_mix.has_value());
  REQUIRE(r.coverage_profile.size() == 20);
  CHECK(r.coverage_profile.back() == doctest::Approx(1.0 / 256));
}

TEST_CASE("mixing is consistent across resolutions") {
  for (const MapSpec& map : {doubling_map(), perturbed_circle_map(3, 0.05), perturbed_torus_map(3, 0.05)}) {
    CAPTURE(map.name());
    int prev = -1;
    for (int n : {32, 64, 128}) {
      const auto r = mixing_check(map, n, 0, 64, 16);
      REQUIRE(r.n_mix.has_value());
      if (prev >= 0) CHECK(*r.n_mix >= prev - 1);
      prev = *r.n_mix;
    }
  }
}

TEST_CASE("all-starts mode reports the slowest start") {
  const auto single = mixing_check(perturbed_torus_map(3, 0.05), 32, 0, 64, 16);
  const auto all = mixing_check_all_starts(perturbed_torus_map(3, 0.05), 32, 64, 16, 7);
  REQUIRE(all.n_mix.has_value());
  CHECK(*all.n_mix >= 1);
  CHECK(*all.n_mix <= *single.n_mix + 2);
}

TEST_CASE("support check") {
  const auto u = support_check(GridMeasure::uniform(1, 64));
  CHECK(u.min_mass == doctest::Approx(1.0 / 64));
  CHECK(u.zero_boxes == 0);
  const auto p = support_check(GridMeasure::point_mass(2, 8, 3));
  CHECK(p.min_mass == 0.0);
  CHECK(p.zero_boxes == 63);
}

TEST_CASE("eigenmeasure of the perturbed torus map has full support") {
  const MapSpec map = perturbed_torus_map(3, 0.05);
  const auto r = power_iterate(build_ulam(map, 32, 16, 0), GridMeasure::uniform(2, 32));
  REQUIRE(r.converged);
  CHECK(support_check(r.measure).zero_boxes == 0);
  CHECK(ball_lower_bound(r.measure, 0.05) > 0.0);
}

TEST_CASE("ball lower bound") {
  const double b = ball_lower_bound(GridMeasure::uniform(1, 100), 0.05);
  CHECK(b >= 0.09);
  CHECK(b <= 0.11);
  CHECK(ball_lower_bound(GridMeasure::point_mass(1, 100, 0), 0.02) == 0.0);
  CHECK_THROWS_AS(ball_lower_bound(GridMeasure::uniform(1, 100), 0.001), InvalidInput);
}

TEST_CASE("uniqueness evidence") {
  SUBCASE("doubling") {
    const auto r = uniqueness_evidence(build_ulam(doubling_map(), 256, 16, 0), 5, 1e-10, 0);
    CHECK(r.all_converged());
    CHECK(r.max_pairwise_tv <= 1e-8);
    CHECK(r.measures.size() == 5);
  }
  SUBCASE("(3x,3y)") {
    const auto r = uniqueness_evidence(build_ulam(linear_torus_map(3), 27, 16, 0), 5, 1e-10, 0);
    CHECK(r.all_converged());
    CHECK(r.max_pairwise_tv <= 1e-8);
  }
  SUBCASE("reducible chain is a negative control") {
    // Two disconnected 4-state cycles.
    std::vector<std::vector<UlamOperator::Entry>> rows(8);
    for (std::uint32_t i = 0; i < 8; ++i) {
      const std::uint32_t block = i / 4 * 4;
      rows[i].push_back({block + (i + 1) % 4, 0.5});
      rows[i].push_back({block + (i + 2) % 4, 0.5});
    }
    const UlamOperator op(1, 8, 1, std::move(rows));
    const auto r = uniqueness_evidence(op, 2, 1e-12, 0);
    CHECK(r.all_converged());
    CHECK(r.max_pairwise_tv == doctest::Approx(1.0));
  }
  SUBCASE("fewer than two seeds") {
    CHECK_THROWS_AS(uniqueness_evidence(build_ulam(doubling_map(), 16, 4, 0), 1, 1e-10, 0), InvalidInput);
  }
}

TEST_CASE("uniqueness evidence is within ten times the tolerance on mixing maps") {
  const double tol = 1e-10;
  for (const MapSpec& map : {perturbed_circle_map(3, 0.05), perturbed_torus_map(3, 0.05)}) {
    CAPTURE(map.name());
    const int n = map.dim() == 1 ? 256 : 32;
    REQUIRE(mixing_check(map, n, 0, 64, 16).n_mix.has_value());
    const auto r = uniqueness_evidence(build_ulam(map, n, 16, 0), 5, tol, 0);
    CHECK(r.all_converged());
    CHECK(r.max_pairwise_tv <= 10 * tol);
  }
}
