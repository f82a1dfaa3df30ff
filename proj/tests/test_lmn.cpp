#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slok/errors.hpp"
#include "slok/lmn.hpp"
#include "slok/random.hpp"

using namespace slok;

namespace {

std::vector<double> sample(const DirectionGrid& g, double (*f)(double)) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.size(); ++i) v[i] = f(g.angle(i));
  return v;
}

std::vector<double> random_even(Rng& rng, const DirectionGrid& g) {
  std::vector<double> a(5), p(5);
  for (int k = 0; k < 5; ++k) {
    a[k] = rng.uniform(-1, 1) / (k + 1);
    p[k] = rng.uniform(0, 2 * oracle::kPi);
  }
  std::vector<double> v(g.size());
  for (int i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < 5; ++k) s += a[k] * std::cos(2 * k * g.angle(i) + p[k]);
    v[i] = s;
  }
  return v;
}

}  // namespace

TEST_CASE("cone operator on the ball") {
  const auto g = make_circle_grid(360);
  const auto ball = ball_support(g);
  const auto u = sample(g, [](double t) { return std::cos(2 * t); });
  const auto L = apply_L_cone(ball, u);
  const double step = g.step();
  const double sym = 1.0 - 4.0 * std::sin(step) * std::sin(step) / (step * step) - 1.0;
  for (int i = 0; i < g.size(); ++i) {
    CHECK(std::abs(L[i] - sym * u[i]) <= 1e-9);
    CHECK(std::abs(L[i] + 4.0 * u[i]) <= 1e-3);
  }
  const auto m = metric_field(ball);
  for (double x : m.g) CHECK(x == 1.0);
}

TEST_CASE("h lies in the kernel") {
  Rng rng(6);
  const auto g = make_circle_grid(180);
  for (int k = 0; k < 10; ++k) {
    const auto h = random_shape(rng).sample(g);
    for (double v : apply_L_cone(h, h.values())) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("general operator") {
  const auto g = make_circle_grid(180);
  const auto ball = ball_support(g);
  const auto u = sample(g, [](double t) { return std::cos(4 * t) + 0.3 * std::cos(2 * t); });
  const auto a = apply_L_general(ball, uniform_density(g), u);
  const auto b = apply_L_cone(ball, u);
  for (int i = 0; i < g.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-10);

  // cone measure pair: nu = normalized r^2, agrees with the cone operator to O(M^-2)
  const auto e = ellipse_support(g, 1.3, 1.0);
  std::vector<double> rho(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double c = std::cos(g.angle(i)), s = std::sin(g.angle(i));
    rho[i] = 1.0 / (c * c / (1.3 * 1.3) + s * s);
  }
  const auto nu = normalized_density(g, rho);
  const auto ag = apply_L_general(e, nu, u);
  const auto ac = apply_L_cone(e, u);
  double err = 0.0;
  for (int i = 0; i < g.size(); ++i) err = std::max(err, std::abs(ag[i] - ac[i]));
  CHECK(err < 1e-2);

  std::vector<double> zero(g.size(), 1.0);
  zero[3] = 0.0;
  GridDensity bad{g, zero, false};
  CHECK_THROWS_AS(apply_L_general(ball, bad, u), NonPositiveDensity);
}

TEST_CASE("dirichlet form") {
  const auto g = make_circle_grid(360);
  const auto ball = ball_support(g);
  const auto f = sample(g, [](double t) { return std::cos(2 * t); });
  const auto gg = sample(g, [](double t) { return std::cos(4 * t); });
  CHECK(dirichlet_residual(ball, f, gg, uniform_density(g)) <= 1e-6);
  CHECK(std::abs(dirichlet_form(ball, f, gg, uniform_density(g))) <= 1e-12);
  // E(f, f) = int f'^2 dsigma = 4 * 1/2 for cos 2t, up to the difference quotient
  CHECK(dirichlet_form(ball, f, f, uniform_density(g)) == doctest::Approx(2.0).epsilon(1e-4));

  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const auto h = random_shape(rng).sample(g);
    const auto mu = cone_measure(h).density;
    const auto a = random_even(rng, g), b = random_even(rng, g);
    CHECK(dirichlet_residual(h, a, b, mu) <= 1e-10);
    CHECK(dirichlet_form(h, a, b, mu) == doctest::Approx(dirichlet_form(h, b, a, mu)).epsilon(1e-12));
    CHECK(dirichlet_form(h, a, a, mu) >= 0.0);
  }
}

TEST_CASE("infinitesimal uniqueness gap") {
  const auto g = make_circle_grid(2880);
  const auto ball = ball_support(g);
  const auto u = uniform_density(g);
  CHECK(std::abs(infinitesimal_uniqueness_gap(ball, u, std::vector<double>(g.size(), 1.0))) <= 1e-12);
  for (int k = 1; k <= 10; ++k) {
    std::vector<double> v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = std::cos(2 * k * g.angle(i));
    const double want = ((1.0 - 4.0 * k * k) * (1.0 - 4.0 * k * k) - 1.0) / 2.0;
    CHECK(infinitesimal_uniqueness_gap(ball, u, v) == doctest::Approx(want).epsilon(1e-3));
  }
}
