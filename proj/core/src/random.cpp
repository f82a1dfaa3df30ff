#include "slok/random.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

std::uint64_t instance_seed(std::uint64_t base, int i) {
  // splitmix64 step
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("SLOK_SEED");
  if (!s || !*s) return fallback;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    return pos == std::string(s).size() ? v : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

double FourierShape::h(double t) const {
  double s = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) s += a[i] * std::cos(2 * k[i] * t + phase[i]);
  return s;
}

double FourierShape::dh(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) s -= 2 * k[i] * a[i] * std::sin(2 * k[i] * t + phase[i]);
  return s;
}

double FourierShape::d2(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double w = 2.0 * k[i];
    s -= w * w * a[i] * std::cos(w * t + phase[i]);
  }
  return s;
}

SupportFn FourierShape::sample(const DirectionGrid& grid) const {
  std::vector<double> v(grid.size());
  const int half = grid.size() / 2;
  for (int i = 0; i < half; ++i) v[i] = v[i + half] = h(grid.angle(i));
  return SupportFn::smooth(grid, v);
}

std::vector<double> FourierShape::exact_d2h(const DirectionGrid& grid) const {
  std::vector<double> v(grid.size());
  for (int i = 0; i < grid.size(); ++i) v[i] = radius_of_curvature(grid.angle(i));
  return v;
}

FourierShape random_shape(Rng& rng, int kmax, double floor) {
  for (;;) {
    FourierShape s;
    const int K = rng.integer(1, kmax);
    const double amp = rng.uniform(0.0, 0.35);
    for (int k = 1; k <= K; ++k) {
      s.k.push_back(k);
      s.a.push_back(rng.uniform(-1.0, 1.0) / std::pow(k, 1.5) * amp);
      s.phase.push_back(rng.uniform(0.0, 2.0 * kPi));
    }
    bool ok = true;
    const int probe = 4096;
    for (int i = 0; i < probe && ok; ++i) {
      const double t = 2.0 * kPi * i / probe;
      ok = s.radius_of_curvature(t) >= floor && s.h(t) > 0;
    }
    if (ok) return s;
  }
}

GridDensity random_density(Rng& rng, const DirectionGrid& grid, int kmax, double amp) {
  std::vector<double> b(kmax), p(kmax);
  for (int k = 0; k < kmax; ++k) {
    b[k] = rng.uniform(-amp, amp) / (k + 1);
    p[k] = rng.uniform(0.0, 2.0 * kPi);
  }
  const int M = grid.size(), half = M / 2;
  std::vector<double> rho(M);
  for (int i = 0; i < half; ++i) {
    double s = 0.0;
    for (int k = 0; k < kmax; ++k) s += b[k] * std::cos(2 * (k + 1) * grid.angle(i) + p[k]);
    rho[i] = rho[i + half] = std::exp(s);
  }
  return normalized_density(grid, std::move(rho));
}

namespace {
UnitVector random_direction(Rng& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Vec3 v{g(rng.engine()), g(rng.engine()), g(rng.engine())};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (r > 1e-3) return UnitVector::from(v, 3);
  }
}

bool is_simple(const Body& b) {
  std::vector<int> count(b.vertices.size(), 0);
  for (const auto& f : b.facets)
    for (int v : f.vertex_ids) ++count[v];
  for (int c : count)
    if (c != 3) return false;
  return b.inactive.empty();
}
}  // namespace

SupportFn random_simple_polytope(Rng& rng, const ShapeGenOptions& opt) {
  for (;;) {
    const int m = rng.integer(opt.min_normals, opt.max_normals);
    std::vector<UnitVector> dirs;
    std::vector<double> h;
    for (int i = 0; i < m; ++i) {
      dirs.push_back(random_direction(rng));
      h.push_back(1.0 + rng.uniform(0.0, opt.h_spread));
    }
    try {
      SupportFn s = SupportFn::polytope(dirs, h);
      if (is_simple(make_body(s))) return s;
    } catch (const Error&) {
    }
  }
}

SupportFn perturb(Rng& rng, const SupportFn& h, double delta) {
  std::vector<double> half = h.half_values();
  for (double& x : half) x *= 1.0 + rng.uniform(-delta, delta);
  return h.with_half_values(std::move(half));
}

}  // namespace slok
