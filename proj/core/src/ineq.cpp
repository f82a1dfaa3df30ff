#include "slok/ineq.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "slok/config.hpp"
#include "slok/errors.hpp"
#include "slok/functionals.hpp"
#include "slok/random.hpp"
#include "slok/transport.hpp"

namespace slok {

namespace {

Margin finish(double value, double tol, const SupportFn* h) {
  Margin m;
  m.value = value;
  m.tolerance = tol;
  m.equality = std::abs(value) <= 1e-8;
  if (h) {
    m.equality_checked = true;
    m.constant = h->max_value() - h->min_value() <= 1e-5;
  }
  if (m.equality && h && !m.constant) m.note = "equality without constant h";
  return m;
}

void need_smooth(const SupportFn& h) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("verifier needs the smooth regime");
}

double mean_over_grid(const SupportFn& h, const std::vector<double>& v) {
  double s = 0.0;
  for (int i = 0; i < h.size(); ++i) s += v[i] * h.grid().weight(i);
  return s;
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// in-plane coordinates of the facet polygon, counterclockwise about the normal
std::vector<std::array<double, 2>> facet_polygon(const Body& b, const Facet& f) {
  const Vec3& u = f.normal.c;
  Vec3 e1 = std::abs(u[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = cross(u, e1);
  const double n1 = std::sqrt(dot3(e1, e1));
  for (double& x : e1) x /= n1;
  const Vec3 e2 = cross(u, e1);
  std::vector<std::array<double, 2>> p;
  for (int v : f.vertex_ids) p.push_back({dot3(b.vertices[v], e1), dot3(b.vertices[v], e2)});
  return p;
}

// (1/2) sum over edges of Q of h_P(edge normal) * edge length
double mixed_area(const std::vector<std::array<double, 2>>& P, const std::vector<std::array<double, 2>>& Q) {
  double s = 0.0;
  const int k = static_cast<int>(Q.size());
  for (int e = 0; e < k; ++e) {
    const auto& a = Q[e];
    const auto& c = Q[(e + 1) % k];
    const double dx = c[0] - a[0], dy = c[1] - a[1];
    const double len = std::hypot(dx, dy);
    if (len == 0) continue;
    const double wx = dy / len, wy = -dx / len;
    double hp = -std::numeric_limits<double>::infinity();
    for (const auto& p : P) hp = std::max(hp, p[0] * wx + p[1] * wy);
    s += hp * len;
  }
  return 0.5 * s;
}

std::multiset<std::vector<int>> incidence(const Body& b) {
  std::vector<std::vector<int>> inc(b.vertices.size());
  for (const auto& f : b.facets)
    for (int v : f.vertex_ids) inc[v].push_back(f.direction);
  std::multiset<std::vector<int>> out;
  for (auto& s : inc) {
    std::sort(s.begin(), s.end());
    out.insert(s);
  }
  return out;
}

}  // namespace

Margin verify_entropy_transport(const GridDensity& nu) {
  const double ent = entropy(nu) / nu.grid.dim();
  const double K = transport_value(discrete(uniform_density(nu.grid)), discrete(nu));
  Margin m = finish(ent - K, 1e-8, nullptr);
  bool uniform = true;
  for (double r : nu.rho) uniform = uniform && std::abs(r - 1.0) <= 1e-12;
  m.constant = uniform;
  return m;
}

Margin verify_leblog(const SupportFn& h) {
  need_smooth(h);
  const auto d = d2h(h);
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = std::log(d[i] / h.value(static_cast<int>(i)));
  return finish(-mean_over_grid(h, v), 1e-8, &h);
}

Margin verify_trace(const SupportFn& h) {
  need_smooth(h);
  const auto d = d2h(h);
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = 1.0 / d[i] - 1.0 / h.value(static_cast<int>(i));
  return finish(mean_over_grid(h, v), 1e-8, &h);
}

FacetTrace facet_trace(const SupportFn& f, const SupportFn& h) {
  if (f.regime() != Regime::polytope || h.regime() != Regime::polytope || f.dim() != 3 || h.dim() != 3)
    throw InvalidInput("facet traces need two polytopes in n = 3");
  if (f.directions() != h.directions()) throw FanMismatch("polytopes use different normal sets");
  const Body bf = make_body(f), bh = make_body(h);
  if (bf.facets.size() != bh.facets.size() || incidence(bf) != incidence(bh))
    throw FanMismatch("polytopes do not share a normal fan");
  FacetTrace t;
  t.volume_f = bf.volume;
  t.volume_h = bh.volume;
  for (std::size_t k = 0; k < bh.facets.size(); ++k) {
    const Facet& Fh = bh.facets[k];
    const Facet& Ff = bf.facets[k];
    if (Fh.direction != Ff.direction) throw FanMismatch("facet lists differ");
    const double V = mixed_area(facet_polygon(bf, Ff), facet_polygon(bh, Fh));
    t.trace.push_back(2.0 * V / Ff.area);
    t.mu.push_back(Fh.h * Fh.area / (3.0 * bh.volume));
    t.ratio.push_back(Fh.h / Ff.h);
  }
  return t;
}

Margin verify_trfh(const SupportFn& f, const SupportFn& h) {
  if (f.regime() == Regime::polytope) {
    const FacetTrace t = facet_trace(f, h);
    double lhs = 0.0, hf = 0.0;
    for (std::size_t k = 0; k < t.mu.size(); ++k) {
      lhs += 0.5 * t.trace[k] * t.mu[k];
      hf += t.ratio[k] * t.mu[k];
    }
    const double rhs = std::sqrt(t.volume_h / t.volume_f) / std::sqrt(hf);
    return finish(lhs - rhs, 1e-6, nullptr);
  }
  need_smooth(f);
  need_smooth(h);
  if (f.size() != h.size()) throw InvalidInput("support functions live on different grids");
  const auto df = d2h(f), dh = d2h(h);
  const auto mu = cone_measure(h).density;
  double lhs = 0.0, hf = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    lhs += dh[i] / df[i] * mu.weight(i);
    hf += h.value(i) / f.value(i) * mu.weight(i);
  }
  const double rhs = body_volume(h) / body_volume(f) / hf;
  return finish(lhs - rhs, 1e-6, nullptr);
}

Margin verify_trfh2(const SupportFn& f, const SupportFn& h) {
  double lhs = 0.0, hf = 0.0;
  if (f.regime() == Regime::polytope) {
    const FacetTrace t = facet_trace(f, h);
    for (std::size_t k = 0; k < t.mu.size(); ++k) {
      lhs += 0.5 * t.trace[k] * t.mu[k];
      hf += t.ratio[k] * t.mu[k];
    }
  } else {
    need_smooth(f);
    need_smooth(h);
    if (f.size() != h.size()) throw InvalidInput("support functions live on different grids");
    const auto df = d2h(f), dh = d2h(h);
    const auto mu = cone_measure(h).density;
    for (int i = 0; i < h.size(); ++i) {
      lhs += dh[i] / df[i] * mu.weight(i);
      hf += h.value(i) / f.value(i) * mu.weight(i);
    }
  }
  Margin m = finish(lhs - hf, 1e-6, nullptr);
  const bool proved = f.regime() == Regime::smooth_circle && f.max_value() == f.min_value();
  m.note = proved ? "n = 2, f constant" : "conjecture, not asserted";
  return m;
}

Margin verify_gage(const SupportFn& h) {
  need_smooth(h);
  const auto d = d2h(h);
  double k2 = 0.0;
  for (double x : d) k2 += 1.0 / x;
  k2 *= h.grid().step();
  return finish(k2 - kPi * perimeter(h) / body_volume(h), 1e-8, &h);
}

Margin verify_bonnesen(const SupportFn& h) {
  need_smooth(h);
  d2h(h);
  const double L = perimeter(h), A = body_volume(h);
  double m = std::numeric_limits<double>::infinity();
  for (double x : h.half_values()) m = std::min(m, x * L - A - kPi * x * x);
  return finish(m, 1e-8, &h);
}

Margin verify_santalo(const SupportFn& h) {
  const double B = unit_ball_volume(h.dim());
  return finish(B * B - body_volume(h) * polar_volume(h), 1e-8, nullptr);
}

CounterexampleReport rectangle_counterexample(double R) {
  if (!(R > 0)) throw InvalidInput("R must be positive");
  const Body b = make_body(box_support({1.0, R}));
  CounterexampleReport r;
  r.R = R;
  for (const auto& f : b.facets) r.lhs += f.h * f.h * f.area;
  r.rhs = 2.0 / std::sqrt(kPi) * std::pow(b.volume, 1.5);
  r.violated = r.lhs > r.rhs;
  return r;
}

double counterexample_threshold(double lo, double hi) {
  auto g = [](double R) {
    const auto r = rectangle_counterexample(R);
    return r.lhs - r.rhs;
  };
  if (g(lo) * g(hi) > 0) throw InvalidInput("threshold is not bracketed");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0) == (g(hi) > 0))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double interpolation_value(const SupportFn& h, double t) {
  need_smooth(h);
  const auto d = d2h(h);
  double s = 0.0;
  for (int i = 0; i < h.size(); ++i)
    s += (std::log(1 - t + t * d[i]) - std::log(1 - t + t * h.value(i))) * h.grid().weight(i);
  return s;
}

double interpolation_derivative(const SupportFn& h, double t) {
  need_smooth(h);
  const auto d = d2h(h);
  double s = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    const double hv = h.value(i);
    s += ((d[i] - 1) / (1 - t + t * d[i]) - (hv - 1) / (1 - t + t * hv)) * h.grid().weight(i);
  }
  return s;
}

double interpolation_derivative_fd(const SupportFn& h, double t, double dt) {
  return (interpolation_value(h, t + dt) - interpolation_value(h, t - dt)) / (2 * dt);
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::entropy_transport: return "entropy-transport";
    case Suite::leblog: return "leblog";
    case Suite::trace: return "trace";
    case Suite::trfh: return "trfh";
    case Suite::trfh_polytope: return "trfh-polytope";
    case Suite::trfh2: return "trfh2";
    case Suite::trfh2_explore: return "trfh2-explore";
    case Suite::gage: return "gage";
    case Suite::bonnesen: return "bonnesen";
    case Suite::santalo: return "santalo";
  }
  return "?";
}

std::vector<Suite> all_suites() {
  return {Suite::entropy_transport, Suite::leblog, Suite::trace, Suite::trfh,  Suite::trfh_polytope,
          Suite::trfh2,             Suite::trfh2_explore, Suite::gage, Suite::bonnesen, Suite::santalo};
}

bool parse_suite(const std::string& name, Suite& out) {
  for (Suite s : all_suites())
    if (suite_name(s) == name) {
      out = s;
      return true;
    }
  return false;
}

namespace {

SweepRow run_instance(Suite suite, const DirectionGrid& grid, std::uint64_t seed, int index) {
  Rng rng(seed);
  SweepRow row;
  row.index = index;
  row.seed = seed;
  Margin m;
  switch (suite) {
    case Suite::entropy_transport: m = verify_entropy_transport(random_density(rng, grid)); break;
    case Suite::leblog: m = verify_leblog(random_shape(rng).sample(grid)); break;
    case Suite::trace: m = verify_trace(random_shape(rng).sample(grid)); break;
    case Suite::gage: m = verify_gage(random_shape(rng).sample(grid)); break;
    case Suite::bonnesen: m = verify_bonnesen(random_shape(rng).sample(grid)); break;
    case Suite::santalo: m = verify_santalo(random_shape(rng).sample(grid)); break;
    case Suite::trfh: {
      const SupportFn f = random_shape(rng).sample(grid);
      m = verify_trfh(f, random_shape(rng).sample(grid));
      break;
    }
    case Suite::trfh_polytope: {
      const SupportFn h = random_simple_polytope(rng);
      for (int attempt = 0;; ++attempt) {
        try {
          m = verify_trfh(perturb(rng, h, attempt < 20 ? 0.05 : 0.01), h);
          break;
        } catch (const FanMismatch&) {
          if (attempt > 200) throw;
        }
      }
      break;
    }
    case Suite::trfh2: m = verify_trfh2(ball_support(grid), random_shape(rng).sample(grid)); break;
    case Suite::trfh2_explore: {
      const SupportFn f = random_shape(rng).sample(grid);
      m = verify_trfh2(f, random_shape(rng).sample(grid));
      row.asserted = false;
      break;
    }
  }
  row.margin = m.value;
  row.pass = !row.asserted || (m.pass() && m.consistent());
  return row;
}

}  // namespace

SweepResult run_sweep(Suite suite, int count, std::uint64_t seed, int M, int jobs) {
  SweepResult res;
  res.suite = suite;
  res.M = M;
  const DirectionGrid grid = make_circle_grid(M);
  res.rows.resize(count);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next++; i < count; i = next++)
      res.rows[i] = run_instance(suite, grid, instance_seed(seed, i), i);
  };
  jobs = std::max(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  res.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : res.rows) {
    if (r.asserted) res.min_margin = std::min(res.min_margin, r.margin);
    res.pass = res.pass && r.pass;
  }
  return res;
}

}  // namespace slok
