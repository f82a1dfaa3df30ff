#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slok/errors.hpp"
#include "slok/functionals.hpp"
#include "slok/random.hpp"

using namespace slok;

TEST_CASE("entropy") {
  const auto g = make_circle_grid(16);
  CHECK(entropy(uniform_density(g)) == 0.0);
  std::vector<double> rho(16, 0.0);
  for (int i = 0; i < 16; ++i)
    if (i % 8 < 4) rho[i] = 2.0;
  const auto half = make_grid_density(g, rho);
  CHECK(entropy(half) == doctest::Approx(std::log(2.0)));
  const auto e1 = UnitVector::angle(0.0);
  CHECK(std::isinf(entropy(make_atomic(2, {e1, -e1}, {0.5, 0.5}))));
  CHECK(relative_entropy(half, half) == 0.0);
  CHECK(std::isinf(relative_entropy(uniform_density(g), half)));
  CHECK(relative_entropy(half, uniform_density(g)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("F at the uniform measure") {
  const auto g = make_circle_grid(32);
  const auto u = uniform_density(g);
  const auto r = F(u, discrete(u));
  CHECK(r.value == 0.0);
  CHECK(r.term("K") == 0.0);
  CHECK(r.residuals.at(0).pass());
  CHECK_THROWS_AS(r.term("nope"), InvalidInput);
}

TEST_CASE("F0 and its scaling") {
  const auto g = make_circle_grid(64);
  const auto u = uniform_density(g);
  CHECK(F0(ball_support(g), u) == 0.0);
  const auto e = ellipse_support(g, 2.0, 1.0);
  CHECK(F0(e.scaled(3.0), u) == doctest::Approx(F0(e, u) + std::log(3.0)));
  CHECK(scale_free_F0(e.scaled(3.0), discrete(u)) == doctest::Approx(scale_free_F0(e, discrete(u))));

  // the square beats the ball on its own cone measure at equal volume
  const auto sq = box_support({0.5, 0.5});
  const auto cone = cone_measure(sq).discrete();
  const double sq_val = scale_free_F0(sq, cone);
  const std::vector<UnitVector> dirs{UnitVector::angle(0), UnitVector::angle(oracle::kPi / 2),
                                     UnitVector::angle(oracle::kPi), UnitVector::angle(3 * oracle::kPi / 2)};
  // ball of area 1 has h = 1/sqrt(pi) in every direction
  double ball_val = 0.0;
  for (double w : cone.mass) ball_val += w * std::log(1.0 / std::sqrt(oracle::kPi));
  CHECK(sq_val <= ball_val);
  (void)dirs;
}

TEST_CASE("EK identity") {
  const auto g = make_circle_grid(90);
  const auto u = uniform_density(g);
  CHECK(ek_identity_residual(ball_support(g), u, u) <= 1e-10);
  CHECK_THROWS_AS(ek_identity_residual(box_support({1.0, 1.0}), u, u), InvalidInput);
}

TEST_CASE("duality decomposition") {
  const auto g = make_circle_grid(64);
  const auto u = uniform_density(g);
  const auto d = duality_decomposition(u, u);
  CHECK(d.term("F") == 0.0);
  CHECK(d.term("log|B|/n") == doctest::Approx(0.5 * std::log(oracle::kPi)));
  CHECK(d.term("F0") == doctest::Approx(-0.5 * std::log(oracle::kPi)));
  for (const auto& r : d.residuals) CHECK(r.pass());

  Rng rng(12);
  const auto g2 = make_circle_grid(120);
  const auto mu = random_density(rng, g2), nu = random_density(rng, g2);
  const auto d2 = duality_decomposition(mu, nu);
  for (const auto& r : d2.residuals) CHECK(r.pass());
  CHECK(d2.term("Ent_m/n") >= 0.0);
}

TEST_CASE("transport distance bounds") {
  const auto g = make_circle_grid(48);
  const auto w0 = w_bounds(uniform_density(g));
  CHECK(w0.w2_bound == 0.0);
  CHECK(w0.w1_bound == 0.0);
  CHECK(w0.w2_squared == doctest::Approx(0.0));
  CHECK(w0.w1 == doctest::Approx(0.0));
  Rng rng(1);
  for (int k = 0; k < 5; ++k) CHECK(w_bounds(random_density(rng, g)).holds());
}
