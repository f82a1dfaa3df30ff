#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slok/errors.hpp"
#include "slok/random.hpp"
#include "slok/transport.hpp"

using namespace slok;

namespace {

DiscreteMeasure atoms(int n, const std::vector<Vec3>& pts, const std::vector<double>& w) {
  DiscreteMeasure m;
  m.n = n;
  for (const auto& p : pts) m.points.push_back(UnitVector::from(p, n));
  m.mass = w;
  return m;
}

std::vector<std::vector<double>> dense_cost(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<std::vector<double>> c(a.points.size(), std::vector<double>(b.points.size()));
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      const double d = dot(a.points[i], b.points[j]);
      c[i][j] = d > 1e-12 ? -std::log(d) : oracle::kInf;
    }
  return c;
}

// random symmetric measure with k antipodal pairs on the circle
DiscreteMeasure random_symmetric(Rng& rng, int k) {
  DiscreteMeasure m;
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& x : w) s += x = rng.uniform(0.1, 1.0);
  for (int i = 0; i < k; ++i) {
    const auto u = UnitVector::angle(rng.uniform(0.0, oracle::kPi));
    m.points.push_back(u);
    m.points.push_back(-u);
    m.mass.push_back(w[i] / (2 * s));
    m.mass.push_back(w[i] / (2 * s));
  }
  return m;
}

DiscreteMeasure eight_uniform() { return discrete(uniform_density(make_circle_grid(8))); }

}  // namespace

TEST_CASE("log cost") {
  const auto x = UnitVector::angle(0.3);
  CHECK(cost(x, x) == 0.0);
  CHECK(std::isinf(cost(UnitVector::angle(0), UnitVector::angle(oracle::kPi / 2))));
  CHECK(std::isinf(cost(UnitVector::angle(0), UnitVector::angle(2.0))));
  CHECK(cost(UnitVector::angle(0), UnitVector::angle(oracle::kPi / 3)) == doctest::Approx(std::log(2.0)));
  CHECK(chordal_cost(1.0) == 0.0);
  CHECK(geodesic_cost(0.0) == doctest::Approx(oracle::kPi / 2));
}

TEST_CASE("feasibility") {
  CHECK(feasibility_check(eight_uniform(), eight_uniform()).feasible);

  const auto e1 = atoms(2, {{1, 0, 0}, {-1, 0, 0}}, {0.5, 0.5});
  const auto e2 = atoms(2, {{0, 1, 0}, {0, -1, 0}}, {0.5, 0.5});
  const auto r = feasibility_check(e1, e2);
  CHECK_FALSE(r.feasible);
  CHECK(r.witness.source_mass > r.witness.target_mass);
  CHECK_THROWS_AS(solve_plan(e1, e2), Infeasible);

  // poles against the equator in three dimensions
  const auto poles = atoms(3, {{0, 0, 1}, {0, 0, -1}}, {0.5, 0.5});
  const auto equator = atoms(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}}, {0.25, 0.25, 0.25, 0.25});
  const auto p = feasibility_check(poles, equator);
  CHECK_FALSE(p.feasible);
  CHECK(p.witness.rows.size() == 2);
  CHECK(p.witness.cols.empty());
  try {
    solve_plan(poles, equator);
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.witness().source_mass == doctest::Approx(1.0));
  }

  // uniform on eight nodes against the axis: nodes at +-pi/2 see only orthogonal targets
  const auto axis = atoms(2, {{1, 0, 0}, {-1, 0, 0}}, {0.5, 0.5});
  const auto f = feasibility_check(eight_uniform(), axis);
  CHECK_FALSE(f.feasible);
  CHECK(f.witness.source_mass == doctest::Approx(0.25));
  CHECK(f.witness.target_mass == 0.0);
}

TEST_CASE("identity transport") {
  const auto g = make_circle_grid(16);
  Rng rng(2);
  const auto mu = discrete(random_density(rng, g));
  const auto sol = solve_plan(mu, mu);
  CHECK(sol.plan.K == 0.0);
  for (const auto& e : sol.plan.entries) CHECK(e.i == e.j);
  CHECK(sol.duals.dual_value(mu, mu) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eight by two instance") {
  const double t = oracle::kPi / 8;
  const auto nu = atoms(2, {{std::cos(t), std::sin(t), 0}, {-std::cos(t), -std::sin(t), 0}}, {0.5, 0.5});
  const auto mu = eight_uniform();
  const auto sol = solve_plan(mu, nu);
  // every node has exactly one target at angle pi/8 or 3pi/8
  CHECK(sol.plan.K == doctest::Approx(0.75 * std::log(2.0)).epsilon(1e-14));
  const auto brute = oracle::enumerate_bases(mu.mass, nu.mass, dense_cost(mu, nu));
  CHECK(brute.feasible >= 1);
  CHECK(std::abs(sol.plan.K - brute.value) <= 1e-9);
  CHECK(std::abs(sol.plan.K - sol.duals.dual_value(mu, nu)) <= 1e-12);
  const auto rows = sol.plan.row_sums(), cols = sol.plan.col_sums();
  for (int i = 0; i < 8; ++i) CHECK(rows[i] == doctest::Approx(0.125));
  for (int j = 0; j < 2; ++j) CHECK(cols[j] == doctest::Approx(0.5));

  const auto sk = sinkhorn(mu, nu, 0.01);
  CHECK(sk.converged);
  CHECK(std::abs(sk.value - sol.plan.K) <= 1e-2);
}

TEST_CASE("simplex against basis enumeration") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int a = rng.integer(1, 3), b = rng.integer(1, 3);
    const auto mu = random_symmetric(rng, a), nu = random_symmetric(rng, b);
    const auto brute = oracle::enumerate_bases(mu.mass, nu.mass, dense_cost(mu, nu));
    if (!std::isfinite(brute.value)) {
      CHECK_FALSE(feasibility_check(mu, nu).feasible);
      continue;
    }
    const auto sol = solve_plan(mu, nu);
    CHECK(std::abs(sol.plan.K - brute.value) <= 1e-9);
    CHECK(std::abs(sol.plan.K - sol.duals.dual_value(mu, nu)) <= 1e-9);
  }
}

TEST_CASE("dual feasibility and slackness") {
  Rng rng(4);
  const auto g = make_circle_grid(36);
  const auto mu = discrete(random_density(rng, g)), nu = discrete(random_density(rng, g));
  const auto sol = solve_plan(mu, nu);
  const auto c = log_cost_matrix(mu, nu);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j)
      if (c.allowed(i, j)) CHECK(c(i, j) + sol.duals.phi[i] - sol.duals.psi[j] >= -1e-10);
  for (const auto& e : sol.plan.entries)
    CHECK(std::abs(c(e.i, e.j) + sol.duals.phi[e.i] - sol.duals.psi[e.j]) <= 1e-10);
  CHECK(std::abs(sol.plan.K - sol.duals.dual_value(mu, nu)) <= 1e-10);
}

TEST_CASE("antipodal equivariance") {
  Rng rng(8);
  auto mu = random_symmetric(rng, 3), nu = random_symmetric(rng, 3);
  auto flip = [](DiscreteMeasure m) {
    for (auto& p : m.points) p = -p;
    return m;
  };
  CHECK(transport_value(mu, nu) == transport_value(flip(mu), flip(nu)));
}

TEST_CASE("sinkhorn") {
  const auto mu = eight_uniform();
  const auto s1 = sinkhorn(mu, mu, 0.1);
  CHECK(s1.value <= 0.05);
  const auto s2 = sinkhorn(mu, mu, 0.01);
  CHECK(s2.value <= s1.value);
  CHECK_THROWS_AS(sinkhorn(mu, mu, 5.0), InvalidInput);
  CHECK_THROWS_AS(sinkhorn(mu, mu, 1e-5), InvalidInput);
  CHECK(s1.guardrail == doctest::Approx(2 * 0.1 * std::log(64.0)));
}

TEST_CASE("duals to body") {
  const auto g = make_circle_grid(64);
  const auto s = discrete(uniform_density(g));
  const auto sol = solve_plan(s, s);
  const auto tb = duals_to_body(sol.duals, s, s, Gauge::unit_volume);
  CHECK(std::abs(tb.volume - 1.0) <= 1e-8);
  for (double h : tb.h_at_sources()) CHECK(h == doctest::Approx(1.0 / std::sqrt(oracle::kPi)).epsilon(1e-12));
  const auto t1 = duals_to_body(sol.duals, s, s, Gauge::h0_equals_1);
  CHECK(t1.h_at_sources()[0] == doctest::Approx(1.0));

  // square: its cone measure against the normalized r^2 of the square
  const int M = 720;
  const auto grid = make_circle_grid(M);
  std::vector<double> rho(M);
  for (int i = 0; i < M; ++i) {
    const double r = 1.0 / std::max(std::abs(std::cos(grid.angle(i))), std::abs(std::sin(grid.angle(i))));
    rho[i] = r * r;
  }
  const auto nu = discrete(normalized_density(grid, rho));
  const auto mu = atoms(2, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}}, {0.25, 0.25, 0.25, 0.25});
  const auto sq = duals_to_body(solve_plan(mu, nu).duals, mu, nu, Gauge::unit_volume);
  for (double h : sq.h_at_sources()) CHECK(h == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("transport map and change of variables") {
  const auto g = make_circle_grid(64);
  const auto ang = transport_angles(ball_support(g));
  for (int i = 0; i < g.size(); ++i) CHECK(ang[i] == doctest::Approx(g.angle(i)));
  const auto e = ellipse_support(g, 2.0, 1.0);
  const auto T0 = transport_map(e, 0);
  CHECK(T0[0] == doctest::Approx(1.0));
  CHECK(T0[1] == doctest::Approx(0.0).epsilon(1e-14));
  const auto u = uniform_density(g);
  CHECK(ma_residual(ball_support(g), u, u) <= 1e-10);

  // a perturbed target is detected
  std::vector<double> rho(g.size());
  for (int i = 0; i < g.size(); ++i) rho[i] = 1.0 + 0.1 * std::cos(2 * g.angle(i));
  CHECK(ma_residual(ball_support(g), u, normalized_density(g, rho)) >= 0.099);
}

TEST_CASE("variations") {
  const auto g = make_circle_grid(16);
  const auto s = discrete(uniform_density(g));
  const auto sol = solve_plan(s, s);
  const auto v = make_variation(std::vector<double>(16, 0.0), s.mass, g.antipode_index());
  CHECK(variation_source(sol.duals, v) == 0.0);
  std::vector<double> odd(16, 0.0);
  odd[1] = 1.0;
  CHECK_THROWS_AS(make_variation(odd, s.mass, g.antipode_index()), InvalidInput);
  const auto w = make_variation(std::vector<double>(16, 3.0), s.mass);
  CHECK(std::abs(w.mean()) <= 1e-15);
}

TEST_CASE("antipode map and grid detection") {
  const auto g = make_circle_grid(12);
  const auto d = discrete(uniform_density(g));
  const auto a = antipode_map(d);
  for (int i = 0; i < 12; ++i) CHECK(a[i] == g.antipode(i));
  CHECK(is_circle_grid(d));
  const auto e1 = atoms(2, {{1, 0, 0}, {0, 1, 0}}, {0.5, 0.5});
  CHECK(antipode_map(e1)[0] == -1);
  CHECK_FALSE(is_circle_grid(e1));
}
