#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "maxent/errors.hpp"
#include "maxent/hyperbolic.hpp"
#include "maxent/maps.hpp"
#include "maxent/orbits.hpp"
#include "oracles.hpp"

using namespace maxent;

TEST_CASE("hyperbolic-time scan equals the brute-force inequality") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> val(-2.0, 1.0);
  std::uniform_real_distribution<double> cval(0.01, 0.5);
  std::uniform_int_distribution<int> len(1, 50);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> a(static_cast<std::size_t>(len(rng)));
    for (double& v : a) v = val(rng);
    const double c = cval(rng);
    if (detect_hyperbolic_times(a, c).times != oracle::hyperbolic_times_brute(a, c)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("hyperbolic-time scan on dyadic sequences with exact ties") {
  // Entries and c are dyadic rationals, so partial sums are exact and the
  // boundary case sum == -2cj is exercised without rounding.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-8, 4);
  std::uniform_int_distribution<int> len(1, 40);
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> a(static_cast<std::size_t>(len(rng)));
    for (double& v : a) v = num(rng) / 8.0;
    const double c = 0.125;
    if (detect_hyperbolic_times(a, c).times != oracle::hyperbolic_times_brute(a, c)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("hyperbolic-time density profile") {
  const std::vector<double> a{-1.0, 0.5, -1.0, -1.0};
  const auto h = detect_hyperbolic_times(a, 0.1);
  CHECK(h.times == std::vector<int>{1, 3, 4});
  REQUIRE(h.density_profile.size() == 4);
  CHECK(h.density_profile[0] == doctest::Approx(1.0));
  CHECK(h.density_profile[1] == doctest::Approx(0.5));
  CHECK(h.density_profile[3] == doctest::Approx(0.75));
  CHECK(h.contains(4));
  CHECK_FALSE(h.contains(2));
}

TEST_CASE("doubling map: every time is hyperbolic") {
  const MapSpec map = doubling_map();
  const OrbitRecord orbit = generate_orbit(map, Point(0.1234567), 10000);
  CHECK(orbit.length() == 10000);
  const auto h = detect_hyperbolic_times(orbit, std::log(2.0) / 10);
  CHECK(h.terminal_density() == 1.0);
  const auto dc = density_lower_bound_check(orbit, std::log(2.0) / 10);
  CHECK(dc.average_below);
  CHECK(dc.average == doctest::Approx(-std::log(2.0)));
}

TEST_CASE("time_slice_density") {
  const std::vector<double> good(10, -1.0);
  const std::vector<double> bad(10, 1.0);
  const std::vector<HyperbolicTimeSet> sets{detect_hyperbolic_times(good, 0.1),
                                            detect_hyperbolic_times(good, 0.1),
                                            detect_hyperbolic_times(bad, 0.1)};
  CHECK(time_slice_density(sets, 3, 0.5) == 4);
  CHECK_FALSE(time_slice_density(sets, 3, 0.9).has_value());
}

TEST_CASE("power selection") {
  SUBCASE("synthetic estimate") {
    const auto est = [](int n) { return -0.01 * n; };
    CHECK(first_qualifying_power(est, 0.01, 50) == 5);
    try {
      first_qualifying_power(est, 1.0, 10);
      FAIL("expected SelectionFailure");
    } catch (const SelectionFailure& e) {
      CHECK(e.best_power() == 10);
      CHECK(e.best_value() == doctest::Approx(-0.1));
    }
  }
  SUBCASE("doubling qualifies at N = 1") {
    const auto mu = GridMeasure::uniform(1, 64);
    CHECK(select_power_N(doubling_map(), mu, std::log(2.0) / 10, 16) == 1);
  }
  SUBCASE("log inverse norm of a power") {
    CHECK(log_inverse_norm_power(linear_torus_map(3), Point(0.2, 0.3), 7) ==
          doctest::Approx(-7 * std::log(3.0)));
  }
}

TEST_CASE("log inverse norm") {
  CHECK(log_inverse_norm(Mat(2, 0, 0, 3)) == doctest::Approx(-std::log(2.0)));
  CHECK_THROWS_AS(log_inverse_norm(Mat(1, 1, 1, 1)), DegenerateDerivative);
}

TEST_CASE("Lyapunov exponents") {
  SUBCASE("(2x,3y)") {
    const auto l = lyapunov_spectrum(diagonal_torus_map(2, 3), Point(0.123, 0.456), 10000);
    REQUIRE(l.size() == 2);
    CHECK(std::abs(l[0] - std::log(3.0)) <= 1e-8);
    CHECK(std::abs(l[1] - std::log(2.0)) <= 1e-8);
  }
  SUBCASE("exponent sum matches the log-determinant average") {
    const MapSpec map = perturbed_torus_map(3, 0.05);
    const Point x0(0.31, 0.77);
    const auto l = lyapunov_spectrum(map, x0, 5000);
    CHECK(l[0] + l[1] == doctest::Approx(log_det_average(map, x0, 5000)).epsilon(1e-9));
    CHECK(l[0] >= l[1]);
  }
  SUBCASE("integrated exponents over a measure") {
    const auto ex = integrated_exponents(linear_torus_map(3), GridMeasure::uniform(2, 16), 200, 8, 1);
    REQUIRE(ex.mean.size() == 2);
    CHECK(ex.mean[0] == doctest::Approx(std::log(3.0)));
    CHECK(ex.std_error[0] <= 1e-12);
  }
}

TEST_CASE("backward contraction along hyperbolic times") {
  for (const MapSpec& map : {doubling_map(), linear_torus_map(3), diagonal_torus_map(2, 3),
                             perturbed_circle_map(3, 0.05), perturbed_torus_map(3, 0.05)}) {
    CAPTURE(map.name());
    const double c = map.dim() == 1 ? std::log(static_cast<double>(map.degree())) / 10 : std::log(2.0) / 10;
    const Point x0 = map.dim() == 1 ? Point(0.377) : Point(0.377, 0.611);
    const OrbitRecord orbit = generate_orbit(map, x0, 2000);
    const auto h = detect_hyperbolic_times(orbit, c);
    REQUIRE_FALSE(h.times.empty());
    ContractionOptions opt;
    opt.delta0 = 0.02;
    const auto r = verify_contraction(map, orbit, h, opt);
    CHECK(r.checks > 0);
    CHECK(r.pass_fraction == 1.0);
    CHECK(r.worst_ratio <= 1.05);
  }
}
