#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "slok/errors.hpp"
#include "slok/ineq.hpp"
#include "slok/random.hpp"

using namespace slok;

TEST_CASE("entropy transport margin") {
  const auto g = make_circle_grid(60);
  const auto m = verify_entropy_transport(uniform_density(g));
  CHECK(std::abs(m.value) <= 1e-12);
  CHECK(m.constant);
  Rng rng(1);
  for (int k = 0; k < 5; ++k) CHECK(verify_entropy_transport(random_density(rng, g)).value > 0);
}

TEST_CASE("leblog and trace margins") {
  const auto g = make_circle_grid(360);
  for (const auto& h : {ball_support(g), ball_support(g, 2.5)}) {
    const auto a = verify_leblog(h), b = verify_trace(h);
    CHECK(std::abs(a.value) <= 1e-12);
    CHECK(a.equality);
    CHECK(a.constant);
    CHECK(a.consistent());
    CHECK(b.equality);
    CHECK(b.constant);
  }
  const auto e = ellipse_support(g, 2.0, 1.0);
  CHECK(verify_leblog(e).value > 0);
  CHECK(verify_trace(e).value > 0);
  const auto near = SupportFn::smooth(g, [](double t) { return 1.0 + 0.01 * std::cos(2 * t); });
  const auto n = verify_leblog(near);
  CHECK(n.value > 0);
  CHECK_FALSE(n.equality);
  CHECK_FALSE(n.constant);
  CHECK_THROWS_AS(verify_leblog(box_support({1.0, 1.0})), InvalidInput);
}

TEST_CASE("trfh in the plane") {
  const auto g = make_circle_grid(360);
  const auto e = ellipse_support(g, 2.0, 1.0);
  CHECK(std::abs(verify_trfh(e, e).value) <= 1e-10);
  CHECK(std::abs(verify_trfh(ball_support(g), ball_support(g)).value) <= 1e-10);
  CHECK(verify_trfh(ball_support(g), e).value > 0);
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_shape(rng).sample(g), h = random_shape(rng).sample(g);
    const double m1 = verify_trfh(f, h).value;
    CHECK(verify_trfh(f.scaled(3.0), h).value == doctest::Approx(m1 / 3.0).epsilon(1e-9));
    CHECK(m1 >= -1e-6);
  }
}

TEST_CASE("trfh for shared-fan polytopes") {
  const auto box = box_support({1.0, 2.0, 0.5});
  CHECK(std::abs(verify_trfh(box, box).value) <= 1e-10);
  const auto t = facet_trace(box, box);
  for (double x : t.trace) CHECK(x == doctest::Approx(2.0));
  CHECK(verify_trfh(box_support({1, 1, 1}), box).value >= -1e-6);

  Rng rng(5);
  const auto h = random_simple_polytope(rng);
  CHECK(std::abs(verify_trfh(h, h).value) <= 1e-10);
  CHECK_THROWS_AS(verify_trfh(box, h), FanMismatch);
}

TEST_CASE("trfh2") {
  const auto g = make_circle_grid(180);
  const auto e = ellipse_support(g, 1.5, 1.0);
  CHECK(std::abs(verify_trfh2(e, e).value) <= 1e-10);
  const auto m = verify_trfh2(ball_support(g), e);
  CHECK(m.value >= -1e-6);
  CHECK(m.note == "n = 2, f constant");
  CHECK(verify_trfh2(e, ball_support(g)).note == "conjecture, not asserted");
}

TEST_CASE("gage, bonnesen, santalo") {
  const auto g = make_circle_grid(360);
  const auto ball = ball_support(g);
  const auto e = ellipse_support(g, 2.0, 1.0);
  CHECK(std::abs(verify_gage(ball).value) <= 1e-8);
  CHECK(verify_gage(e).value > 0);
  CHECK(std::abs(verify_bonnesen(ball).value) <= 1e-8);
  CHECK(verify_bonnesen(e).value > 0);
  CHECK(std::abs(verify_santalo(ball).value) <= 1e-8);
  // ellipses are equality cases as well
  CHECK(std::abs(verify_santalo(e).value) <= 1e-6);
  CHECK(verify_santalo(box_support({1.0, 1.0})).value == doctest::Approx(oracle::kPi * oracle::kPi - 8.0));
}

TEST_CASE("rectangle counterexample") {
  const auto r10 = rectangle_counterexample(10.0);
  CHECK(r10.lhs == doctest::Approx(440.0));
  CHECK(r10.lhs == doctest::Approx(oracle::rectangle_lhs(10.0)));
  CHECK(r10.rhs == doctest::Approx(oracle::rectangle_rhs(10.0)));
  CHECK(r10.rhs == doctest::Approx(285.46).epsilon(1e-4));
  CHECK(r10.violated);
  const auto r1 = rectangle_counterexample(1.0);
  CHECK(r1.lhs == doctest::Approx(8.0));
  CHECK(r1.rhs == doctest::Approx(16.0 / std::sqrt(oracle::kPi)));
  CHECK_FALSE(r1.violated);
  const double R = counterexample_threshold();
  CHECK(oracle::rectangle_lhs(R) == doctest::Approx(oracle::rectangle_rhs(R)).epsilon(1e-10));
  CHECK_THROWS_AS(rectangle_counterexample(-1.0), InvalidInput);
}

TEST_CASE("interpolation derivative") {
  const auto g = make_circle_grid(360);
  Rng rng(7);
  for (int k = 0; k < 5; ++k) {
    const auto h = random_shape(rng).sample(g);
    for (double t : {0.1, 0.5, 0.9, 1.0}) {
      const double d = interpolation_derivative(h, t);
      CHECK(d <= 1e-6);
      CHECK(d == doctest::Approx(interpolation_derivative_fd(h, t)).epsilon(1e-5));
    }
    CHECK(interpolation_value(h, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("suite names") {
  for (Suite s : all_suites()) {
    Suite back;
    REQUIRE(parse_suite(suite_name(s), back));
    CHECK(back == s);
  }
  Suite x;
  CHECK_FALSE(parse_suite("nonsense", x));
}

TEST_CASE("sweeps are deterministic and thread independent") {
  const auto a = run_sweep(Suite::leblog, 20, 3, 90, 1);
  const auto b = run_sweep(Suite::leblog, 20, 3, 90, 4);
  REQUIRE(a.rows.size() == 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(a.rows[i].margin == b.rows[i].margin);
    CHECK(a.rows[i].seed == instance_seed(3, i));
  }
  CHECK(a.pass);
  const auto e = run_sweep(Suite::trfh2_explore, 5, 1, 90, 1);
  for (const auto& r : e.rows) CHECK_FALSE(r.asserted);
}
