#include <cmath>
#include <random>

#include "doctest.h"
#include "maxent/branches.hpp"
#include "maxent/condition.hpp"
#include "maxent/errors.hpp"
#include "maxent/grid.hpp"
#include "maxent/linalg.hpp"
#include "maxent/maps.hpp"
#include "oracles.hpp"

using namespace maxent;

namespace {

Mat random_mat(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
  return Mat(a, b, c, d);
}

}  // namespace

TEST_CASE("torus wrapping and distance") {
  CHECK(wrap_unit(1.25) == doctest::Approx(0.25));
  CHECK(wrap_unit(-0.25) == doctest::Approx(0.75));
  CHECK(torus_distance(Point(0.05), Point(0.95)) == doctest::Approx(0.1));
  CHECK(torus_distance(Point(0.05, 0.5), Point(0.95, 0.5)) == doctest::Approx(0.1));
  CHECK(torus_distance(Point(0.1, 0.1), Point(0.4, 0.5)) == doctest::Approx(0.5));
}

TEST_CASE("exterior power norm of a triangular matrix") {
  const Mat a(2, 1, 0, 2);
  const double expected = std::sqrt((9.0 + std::sqrt(17.0)) / 2.0);
  CHECK(exterior_power_norm(a, 1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(exterior_power_norm(a, 2) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("exterior power norm matches independent oracles on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Mat a = random_mat(rng);
    const double ref = oracle::sigma_max_power({a(0, 0), a(0, 1), a(1, 0), a(1, 1)});
    CHECK(std::abs(exterior_power_norm(a, 1) - ref) <= 1e-10 * std::max(1.0, ref));
    const double d = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    CHECK(std::abs(exterior_power_norm(a, 2) - d) <= 1e-10 * std::max(1.0, d));
  }
}

TEST_CASE("exterior power norm is submultiplicative") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Mat a = random_mat(rng);
    const Mat b = random_mat(rng);
    for (int k = 1; k <= 2; ++k) {
      CHECK(exterior_power_norm(a * b, k) <=
            exterior_power_norm(a, k) * exterior_power_norm(b, k) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("exterior power norm rejects bad input") {
  CHECK_THROWS_AS(exterior_power_norm(Mat(1, 0, 0, 1), 3), InvalidInput);
  CHECK_THROWS_AS(exterior_power_norm(Mat(NAN, 0, 0, 1), 1), InvalidInput);
}

TEST_CASE("singular values and QR") {
  const Mat a(2, 1, 0, 2);
  const auto s = singular_values(a);
  CHECK(s[0] * s[1] == doctest::Approx(4.0));
  const QR qr = qr_decompose(Mat(1, 2, 3, 4));
  const Mat back = qr.q * qr.r;
  CHECK(back(0, 0) == doctest::Approx(1.0));
  CHECK(back(0, 1) == doctest::Approx(2.0));
  CHECK(back(1, 0) == doctest::Approx(3.0));
  CHECK(back(1, 1) == doctest::Approx(4.0));
  CHECK(qr.r(1, 0) == 0.0);
  CHECK(std::abs(det(qr.q)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(inverse(Mat(1, 2, 2, 4)), DegenerateDerivative);
}

TEST_CASE("compute_Ck for the circle has no admissible k") {
  CHECK_THROWS_AS(compute_Ck(doubling_map(), 1, 64), EmptyRange);
}

TEST_CASE("compute_Ck on linear and perturbed torus maps") {
  CHECK(compute_Ck(linear_torus_map(3), 1, 256) == doctest::Approx(3.0).epsilon(1e-12));
  const double c = compute_Ck(perturbed_torus_map(3, 0.05), 1, 256);
  CHECK(c >= 3.0);
  CHECK(c <= 3.0 + 2.0 * M_PI * 0.05 + 1e-12);
  // Nested grids: refinement can only raise the maximum.
  CHECK(compute_Ck(perturbed_torus_map(3, 0.05), 1, 128) <= c + 1e-15);
}

TEST_CASE("check_condition on built-in maps") {
  SUBCASE("doubling passes vacuously") {
    const auto r = check_condition(doubling_map());
    CHECK(r.passes);
    CHECK(r.Ck.empty());
    CHECK(r.margin_c == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("(3x,3y)") {
    const auto r = check_condition(linear_torus_map(3));
    CHECK(r.degree == 9);
    CHECK(r.passes);
    CHECK(std::abs(r.Ck[0] - 3.0) <= 1e-9);
    CHECK(std::abs(r.margin_c - std::log(3.0)) <= 1e-9);
    CHECK(r.hyperbolic_c == doctest::Approx(std::log(3.0) / 10));
  }
  SUBCASE("(2x,3y)") {
    const auto r = check_condition(diagonal_torus_map(2, 3));
    CHECK(r.passes);
    CHECK(r.margin_c == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("shear fails with p = 1") {
    const auto r = check_condition(shear_torus_map());
    CHECK_FALSE(r.passes);
  }
  SUBCASE("identity fails") {
    const auto r = check_condition(identity_torus_map());
    CHECK_FALSE(r.passes);
    CHECK(r.margin_c == doctest::Approx(0.0));
  }
  SUBCASE("large perturbation loses invertibility") {
    const auto r = check_condition(perturbed_torus_map(3, 0.9));
    CHECK_FALSE(r.derivative_invertible);
  }
}

TEST_CASE("inverse branches of the doubling map") {
  const auto pre = inverse_branches(doubling_map(), Point(0.3));
  REQUIRE(pre.size() == 2);
  CHECK(pre[0][0] == doctest::Approx(0.15));
  CHECK(pre[1][0] == doctest::Approx(0.65));
}

TEST_CASE("inverse branches of perturbed maps are exact preimages") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MapSpec circle = perturbed_circle_map(3, 0.05);
  const MapSpec torus = perturbed_torus_map(3, 0.05);
  for (int t = 0; t < 50; ++t) {
    const Point y1(u(rng));
    const auto p1 = inverse_branches(circle, y1);
    CHECK(p1.size() == 3);
    for (const Point& z : p1) CHECK(torus_distance(circle.eval(z), y1) <= 1e-10);
    const double yx = u(rng), yy = u(rng);
    const Point y2(yx, yy);
    const auto p2 = inverse_branches(torus, y2);
    CHECK(p2.size() == 9);
    for (const Point& z : p2) CHECK(torus_distance(torus.eval(z), y2) <= 1e-10);
    for (std::size_t i = 0; i < p2.size(); ++i)
      for (std::size_t j = i + 1; j < p2.size(); ++j) CHECK(torus_distance(p2[i], p2[j]) > 1e-3);
  }
}

TEST_CASE("generic Newton path agrees with the declared degree") {
  const MapSpec shear = shear_torus_map();
  const auto pre = inverse_branches(shear, Point(0.3, 0.7));
  REQUIRE(pre.size() == 1);
  CHECK(pre[0][1] == doctest::Approx(0.7));
  CHECK(pre[0][0] == doctest::Approx(0.6));
  CHECK(count_preimages(perturbed_torus_map(3, 0.05), Point(0.2, 0.4),
                        default_seed_count(perturbed_torus_map(3, 0.05))) == 9);
  CHECK(audit_degree(perturbed_circle_map(3, 0.05)).ok);
  CHECK(audit_degree(shear).ok);
}

TEST_CASE("map factory") {
  MapParams p;
  p.name = "perturbed_torus";
  p.a = 3;
  CHECK(make_map(p).degree() == 9);
  p.name = "nonexistent";
  CHECK_THROWS_AS(make_map(p), ConfigError);
}

TEST_CASE("grid indexing") {
  const Grid g(2, 8);
  CHECK(g.size() == 64);
  CHECK(g.index_of(Point(0.0, 0.0)) == 0);
  CHECK(g.index_of(Point(0.99, 0.01)) == 56);
  const auto m = g.multi_index(57);
  CHECK(m[0] == 7);
  CHECK(m[1] == 1);
  CHECK(g.index_of(g.center(57)) == 57);
  CHECK(g.box_diameter() == doctest::Approx(std::sqrt(2.0) / 8));
}
