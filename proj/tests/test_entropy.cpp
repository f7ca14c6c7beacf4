#include <cmath>
#include <vector>

#include "doctest.h"
#include "maxent/entropy.hpp"
#include "maxent/errors.hpp"
#include "maxent/maps.hpp"
#include "maxent/ulam.hpp"
#include "oracles.hpp"

using namespace maxent;

TEST_CASE("Jacobian of linear maps under Lebesgue is the degree") {
  SUBCASE("doubling") {
    const auto mu = GridMeasure::uniform(1, 256);
    const auto f = estimate_jacobian(doubling_map(), mu, 32);
    const auto st = check_jacobian_constant(f, 2);
    CHECK(st.supported == 256);
    CHECK(st.max_rel_dev <= 1e-12);
    CHECK(rokhlin_entropy(f, mu) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("(3x,3y)") {
    const auto mu = GridMeasure::uniform(2, 32);
    const auto f = estimate_jacobian(linear_torus_map(3), mu, 32);
    const auto st = check_jacobian_constant(f, 9);
    CHECK(st.median == doctest::Approx(9.0));
    CHECK(st.max_rel_dev <= 1e-12);
    CHECK(rokhlin_entropy(f, mu) == doctest::Approx(std::log(9.0)).epsilon(1e-12));
  }
  SUBCASE("identity") {
    const auto mu = GridMeasure::uniform(2, 16);
    const auto f = estimate_jacobian(identity_torus_map(), mu, 16);
    CHECK(check_jacobian_constant(f, 1).max_rel_dev <= 1e-12);
    CHECK(rokhlin_entropy(f, mu) == doctest::Approx(0.0));
  }
}

TEST_CASE("boxes below the mass floor are excluded") {
  auto mu = GridMeasure::uniform(1, 64);
  mu.masses[0] = 0.0;
  mu.masses[1] = 2.0 / 64;
  const auto f = estimate_jacobian(doubling_map(), mu, 8);
  CHECK(f.excluded == 1);
  CHECK_FALSE(f.defined(0));
  CHECK(std::isnan(f.values[0]));
}

TEST_CASE("Jacobian of the perturbed circle eigenmeasure") {
  const MapSpec map = perturbed_circle_map(3, 0.05);
  const auto r = power_iterate(build_ulam(map, 512, 32, 0), GridMeasure::uniform(1, 512));
  REQUIRE(r.converged);
  const auto f = estimate_jacobian(map, r.measure, 32);
  const auto st = check_jacobian_constant(f, 3);
  CHECK(st.median == doctest::Approx(3.0).epsilon(0.01));
  CHECK(rokhlin_entropy(f, r.measure) == doctest::Approx(std::log(3.0)).epsilon(0.02));
  const auto ps = preimage_sum_identity(map, f, 500, 1);
  CHECK(ps.mean == doctest::Approx(1.0).epsilon(0.02));
  CHECK(jensen_gap(map, f, r.measure, 500, 1) <= 1e-2);
}

TEST_CASE("preimage sums of a constant Jacobian are one") {
  const auto f = estimate_jacobian(linear_torus_map(3), GridMeasure::uniform(2, 27), 16);
  const auto ps = preimage_sum_identity(linear_torus_map(3), f, 200, 3);
  CHECK(ps.evaluated == 200);
  CHECK(ps.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.max_dev <= 1e-12);
}

TEST_CASE("Jensen gap") {
  const MapSpec map = doubling_map();
  const auto mu = GridMeasure::uniform(1, 64);
  SUBCASE("zero for a constant Jacobian") {
    CHECK(jensen_gap(map, estimate_jacobian(map, mu, 8), mu, 200, 0) == doctest::Approx(0.0));
  }
  SUBCASE("synthetic field with unequal fibre weights") {
    // J = 4/3 on [0, 1/2) and 4 on [1/2, 1): fibre weights (3/4, 1/4).
    JacobianField f{1, 64, std::vector<double>(64), std::vector<bool>(64, true), 0};
    for (int b = 0; b < 64; ++b) f.values[static_cast<std::size_t>(b)] = b < 32 ? 4.0 / 3.0 : 4.0;
    const double expected = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
    CHECK(jensen_gap(map, f, mu, 300, 0) == doctest::Approx(expected).epsilon(1e-9));
    const auto ps = preimage_sum_identity(map, f, 100, 0);
    CHECK(ps.mean == doctest::Approx(1.0));
  }
}

TEST_CASE("Brin-Katok profile of the doubling map") {
  const auto mu = GridMeasure::uniform(1, 4096);
  const std::vector<double> eps{0.05};
  const auto prof = brin_katok_profile(doubling_map(), mu, eps, 8, 32, 0);
  REQUIRE(prof.size() == 8);
  for (const auto& e : prof) {
    CAPTURE(e.n);
    const double analytic = oracle::doubling_ball_mass(0.05, e.n);
    // Grid quantization: the ball spans 2 eps 2^{-(n-1)} N boxes (>= 3 at n = 8).
    const double boxes = analytic * 4096;
    CHECK(std::abs(e.ball_mass - analytic) <= 1.5 / boxes * analytic);
    CHECK(e.rate == doctest::Approx(-std::log(e.ball_mass) / e.n));
  }
  for (std::size_t i = 2; i < prof.size(); ++i) CHECK(prof[i].rate < prof[i - 1].rate);
  CHECK(prof.back().rate >= 0.9 * std::log(2.0));
  CHECK(prof.back().ratio_rate == doctest::Approx(std::log(2.0)).epsilon(0.05));
}

TEST_CASE("Brin-Katok preconditions") {
  const auto mu = GridMeasure::uniform(1, 64);
  const std::vector<double> tiny{0.01};
  CHECK_THROWS_AS(brin_katok_profile(doubling_map(), mu, tiny, 4, 8, 0), InvalidInput);
  const std::vector<double> ok{0.1};
  CHECK_THROWS_AS(brin_katok_profile(doubling_map(), mu, ok, 30, 8, 0), InvalidInput);
}

TEST_CASE("separated sets agree with a brute-force greedy search") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(separated_set_size(doubling_map(), 0.1, n, 2000) ==
          oracle::separated_brute_circle(2, 0.1, n, 2000));
    CHECK(separated_set_size(circle_linear_map(3), 0.1, n, 2000) ==
          oracle::separated_brute_circle(3, 0.1, n, 2000));
  }
}

TEST_CASE("separated-set growth approaches log p") {
  const double s5 = static_cast<double>(separated_set_size(doubling_map(), 0.1, 5, 10000));
  const double s6 = static_cast<double>(separated_set_size(doubling_map(), 0.1, 6, 10000));
  CHECK(std::log(s6 / s5) == doctest::Approx(std::log(2.0)).epsilon(0.05));
  // The (1/n) log s(n) estimate carries a log(1/eps)/n prefactor.
  CHECK(separated_set_entropy(doubling_map(), 0.1, 6, 10000) > std::log(2.0));
}

TEST_CASE("entropy verdicts") {
  EntropyReport r;
  r.log_p = std::log(2.0);
  r.rokhlin_estimate = std::log(2.0);
  r.jensen_gap = 0.0;
  const std::vector<double> exps{std::log(2.0)};
  const auto ok = entropy_gap_diagnostic(r, exps);
  CHECK(ok.all_ok());
  r.rokhlin_estimate = 1.0;
  const auto bad = entropy_gap_diagnostic(r, exps);
  CHECK_FALSE(bad.ruelle_ok);
  CHECK_FALSE(bad.rokhlin_matches_log_p);
  r.rokhlin_estimate = std::log(2.0);
  r.jensen_gap = 0.5;
  CHECK_FALSE(entropy_gap_diagnostic(r, exps).jensen_ok);
}
