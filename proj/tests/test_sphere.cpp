#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slok/errors.hpp"
#include "slok/sphere.hpp"

using namespace slok;

TEST_CASE("circle grid construction") {
  const auto g = make_circle_grid(8);
  CHECK(g.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(g.weight(i) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.node(0)[0] == 1.0);
  CHECK(g.node(0)[1] == 0.0);
  CHECK(g.antipode(0) == 4);
  CHECK_THROWS_AS(make_circle_grid(4), InvalidInput);
  CHECK_THROWS_AS(make_circle_grid(9), InvalidInput);

  const auto big = make_circle_grid(360);
  double s = 0.0;
  for (double w : big.sigma_weights()) s += w;
  CHECK(std::abs(s - 1.0) <= 1e-12);
  for (int i = 0; i < big.size(); ++i) {
    const int j = big.antipode(i);
    CHECK(j != i);
    CHECK(big.antipode(j) == i);
    CHECK(big.node(j)[0] == doctest::Approx(-big.node(i)[0]).epsilon(1e-15));
  }
}

TEST_CASE("unit vectors") {
  const double raw[] = {3.0, 4.0};
  const auto u = UnitVector::from(std::span<const double>(raw, 2));
  CHECK(u[0] == doctest::Approx(0.6));
  CHECK(u[1] == doctest::Approx(0.8));
  const double zero[] = {0.0, 0.0};
  CHECK_THROWS_AS(UnitVector::from(std::span<const double>(zero, 2)), InvalidInput);
  const double four[] = {1, 2, 3, 4};
  CHECK_THROWS_AS(UnitVector::from(std::span<const double>(four, 4)), InvalidInput);
  CHECK(angular_distance(UnitVector::angle(0.3), UnitVector::angle(1.0)) == doctest::Approx(0.7));
  CHECK(angle_of(UnitVector::angle(5.0)) == doctest::Approx(5.0));
}

TEST_CASE("symmetrized direction measures") {
  const auto e1 = UnitVector::angle(0.0);
  SUBCASE("single atom gains its antipode") {
    const auto m = make_sym_directions({e1}, {1.0});
    REQUIRE(m.size() == 2);
    CHECK(m.symmetric);
    CHECK(m.weights[0] == doctest::Approx(0.5));
    CHECK(m.weights[1] == doctest::Approx(0.5));
    CHECK(m.points[1] == -e1);
  }
  SUBCASE("already symmetric") {
    const auto m = make_sym_directions({e1, -e1}, {0.5, 0.5});
    REQUIRE(m.size() == 2);
    CHECK(m.weights[0] == doctest::Approx(0.5));
  }
  SUBCASE("duplicates merge") {
    const auto m = make_sym_directions({e1, e1}, {0.3, 0.7});
    REQUIRE(m.size() == 2);
    CHECK(m.weights[0] == doctest::Approx(0.5));
    CHECK(is_symmetric(m));
  }
}

TEST_CASE("atomic measure validation") {
  const auto e1 = UnitVector::angle(0.0);
  CHECK_THROWS_AS(make_atomic(2, {e1}, {0.5}), InvalidInput);
  CHECK_THROWS_AS(make_atomic(2, {e1, -e1}, {1.5, -0.5}), InvalidInput);
  CHECK_THROWS_AS(make_atomic(2, {}, {}), InvalidInput);
  const auto m = make_atomic(2, {e1, -e1}, {0.5, 0.5});
  CHECK(m.mass() == doctest::Approx(1.0));
  CHECK(is_symmetric(m));
  CHECK_FALSE(is_symmetric(make_atomic(2, {e1, UnitVector::angle(1.0)}, {0.5, 0.5})));
}

TEST_CASE("grid densities") {
  const auto g = make_circle_grid(8);
  const auto u = uniform_density(g);
  for (double r : u.rho) CHECK(r == 1.0);
  CHECK(is_symmetric(u));
  CHECK_THROWS_AS(make_grid_density(g, std::vector<double>(8, 2.0)), InvalidInput);
  CHECK_THROWS_AS(make_grid_density(g, std::vector<double>(7, 1.0)), InvalidInput);
  const auto n = normalized_density(g, {3, 1, 1, 1, 3, 1, 1, 1});
  CHECK(n.mass() == doctest::Approx(1.0));
  CHECK(is_symmetric(n));
  CHECK_FALSE(is_symmetric(normalized_density(g, {3, 1, 1, 1, 1, 1, 1, 1})));
  const auto pot = n.potential();
  CHECK(pot[0] == doctest::Approx(-std::log(n.rho[0])));
}

TEST_CASE("binning atoms onto the grid") {
  const auto g = make_circle_grid(8);
  const auto e1 = UnitVector::angle(0.0);
  const auto b = bin_to_grid(make_atomic(2, {e1, -e1}, {0.5, 0.5}), g);
  const std::vector<double> want{4, 0, 0, 0, 4, 0, 0, 0};
  for (int i = 0; i < 8; ++i) CHECK(b.rho[i] == doctest::Approx(want[i]));

  std::vector<UnitVector> nodes(g.nodes());
  const auto all = bin_to_grid(make_atomic(2, nodes, std::vector<double>(8, 0.125)), g);
  for (double r : all.rho) CHECK(r == doctest::Approx(1.0));

  const auto between = make_atomic(2, {UnitVector::angle(oracle::kPi / 8 - 1e-3), UnitVector::angle(oracle::kPi / 8 + 1e-3)},
                                    {0.5, 0.5});
  const auto bb = bin_to_grid(between, g);
  CHECK(bb.mass() == doctest::Approx(1.0));
  CHECK(bb.rho[0] == doctest::Approx(4.0));
  CHECK(bb.rho[1] == doctest::Approx(4.0));
}

TEST_CASE("discrete view keeps zero masses") {
  const auto g = make_circle_grid(8);
  const auto d = discrete(normalized_density(g, {1, 0, 0, 0, 1, 0, 0, 0}));
  REQUIRE(d.points.size() == 8);
  CHECK(d.mass[1] == 0.0);
  CHECK(d.mass[0] == doctest::Approx(0.5));
}
