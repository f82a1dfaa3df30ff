#include "slok/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

namespace {

bool close_rel(double a, double b, double eps) {
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_positive(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x) || !(x > 0))
      throw InvalidInput(std::string(what) + " values must be finite and positive");
}

}  // namespace

std::vector<double> EvenSamples::values() const {
  std::vector<double> v(dirs_.size());
  for (std::size_t i = 0; i < dirs_.size(); ++i) v[i] = half_[pair_[i]];
  return v;
}

double EvenSamples::min_value() const { return *std::min_element(half_.begin(), half_.end()); }
double EvenSamples::max_value() const { return *std::max_element(half_.begin(), half_.end()); }

void EvenSamples::init_smooth(const DirectionGrid& grid, const std::vector<double>& full,
                              const char* what) {
  const int M = grid.size();
  if (static_cast<int>(full.size()) != M)
    throw InvalidInput(std::string(what) + " length does not match grid");
  check_positive(full, what);
  const int half = M / 2;
  std::vector<double> hv(half);
  for (int k = 0; k < half; ++k) {
    if (!close_rel(full[k], full[k + half], 1e-12))
      throw InvalidInput(std::string(what) + " is not even at node " + std::to_string(k));
    hv[k] = full[k] == full[k + half] ? full[k] : 0.5 * (full[k] + full[k + half]);
  }
  std::vector<int> pair(M);
  for (int i = 0; i < M; ++i) pair[i] = i % half;
  init_half(Regime::smooth_circle, 2, grid, grid.nodes(), std::move(pair), std::move(hv));
}

void EvenSamples::init_polytope(const std::vector<UnitVector>& dirs,
                                const std::vector<double>& vals, const char* what) {
  if (dirs.empty() || dirs.size() != vals.size())
    throw InvalidInput(std::string(what) + ": directions and values differ in length");
  check_positive(vals, what);
  const int n = dirs.front().n;
  std::vector<UnitVector> full;
  std::vector<double> hv;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (dirs[i].n != n) throw InvalidInput("mixed dimensions");
    int hit = -1;
    for (std::size_t j = 0; j < full.size(); ++j)
      if (angular_distance(full[j], dirs[i]) <= tol::merge_angle) {
        hit = static_cast<int>(j);
        break;
      }
    if (hit >= 0) {
      if (!close_rel(hv[hit / 2], vals[i], 1e-12))
        throw InvalidInput(std::string(what) + " is not even (or has conflicting duplicates)");
      continue;
    }
    full.push_back(dirs[i]);
    full.push_back(-dirs[i]);
    hv.push_back(vals[i]);
  }
  std::vector<int> pair(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) pair[i] = static_cast<int>(i / 2);
  init_half(Regime::polytope, n, DirectionGrid{}, std::move(full), std::move(pair), std::move(hv));
}

void EvenSamples::init_half(Regime r, int n, DirectionGrid grid, std::vector<UnitVector> dirs,
                            std::vector<int> pair, std::vector<double> half) {
  regime_ = r;
  n_ = n;
  grid_ = std::move(grid);
  dirs_ = std::move(dirs);
  pair_ = std::move(pair);
  half_ = std::move(half);
}

SupportFn SupportFn::smooth(const DirectionGrid& grid, const std::vector<double>& h) {
  SupportFn s;
  s.init_smooth(grid, h, "support function");
  return s;
}

SupportFn SupportFn::smooth(const DirectionGrid& grid, const std::function<double(double)>& h) {
  std::vector<double> v(grid.size());
  const int half = grid.size() / 2;
  for (int k = 0; k < half; ++k) v[k] = v[k + half] = h(grid.angle(k));
  return smooth(grid, v);
}

SupportFn SupportFn::polytope(const std::vector<UnitVector>& normals, const std::vector<double>& h) {
  SupportFn s;
  s.init_polytope(normals, h, "support numbers");
  return s;
}

SupportFn SupportFn::scaled(double lambda) const {
  if (!(lambda > 0)) throw InvalidInput("scale must be positive");
  SupportFn s = *this;
  for (double& x : s.half_) x *= lambda;
  return s;
}

SupportFn SupportFn::with_half_values(std::vector<double> half) const {
  if (half.size() != half_.size()) throw InvalidInput("wrong number of pair values");
  check_positive(half, "support function");
  SupportFn s = *this;
  s.half_ = std::move(half);
  return s;
}

RadialFn RadialFn::smooth(const DirectionGrid& grid, const std::vector<double>& r) {
  RadialFn s;
  s.init_smooth(grid, r, "radial function");
  return s;
}

RadialFn RadialFn::on_directions(const std::vector<UnitVector>& dirs, const std::vector<double>& r) {
  RadialFn s;
  s.init_polytope(dirs, r, "radial function");
  return s;
}

double Body::boundary_measure() const {
  double s = 0.0;
  for (const auto& f : facets) s += f.area;
  return s;
}

std::vector<double> d2h_raw(const std::vector<double>& h, double step) {
  const int M = static_cast<int>(h.size());
  std::vector<double> d(M);
  const double inv = 1.0 / (step * step);
  for (int i = 0; i < M; ++i) {
    const double hp = h[(i + 1) % M];
    const double hm = h[(i + M - 1) % M];
    d[i] = h[i] + ((hp - h[i]) + (hm - h[i])) * inv;
  }
  return d;
}

std::vector<double> d1_central(const std::vector<double>& h, double step) {
  const int M = static_cast<int>(h.size());
  std::vector<double> d(M);
  for (int i = 0; i < M; ++i) d[i] = (h[(i + 1) % M] - h[(i + M - 1) % M]) / (2.0 * step);
  return d;
}

namespace {

struct TrigTable {
  std::vector<double> c, s;
  explicit TrigTable(int M) : c(M), s(M) {
    for (int j = 0; j < M; ++j) {
      if ((4 * j) % M == 0) {
        const int q = 4 * j / M;
        c[j] = q == 0 ? 1.0 : q == 2 ? -1.0 : 0.0;
        s[j] = q == 1 ? 1.0 : q == 3 ? -1.0 : 0.0;
      } else {
        const double t = 2.0 * kPi * j / M;
        c[j] = std::cos(t);
        s[j] = std::sin(t);
      }
    }
  }
};

// real Fourier coefficients a_k, b_k for k = 1 .. M/2 - 1
void fourier(const std::vector<double>& h, std::vector<double>& a, std::vector<double>& b) {
  const int M = static_cast<int>(h.size());
  static thread_local TrigTable table(8);
  if (static_cast<int>(table.c.size()) != M) table = TrigTable(M);
  const int K = M / 2 - 1;
  a.assign(K + 1, 0.0);
  b.assign(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    double sa = 0.0, sb = 0.0;
    long idx = 0;
    for (int j = 0; j < M; ++j) {
      sa += h[j] * table.c[idx];
      sb += h[j] * table.s[idx];
      idx += k;
      if (idx >= M) idx -= M;
    }
    a[k] = 2.0 * sa / M;
    b[k] = 2.0 * sb / M;
  }
}

// (1/2) integral of (h^2 - h'^2) with the trigonometric interpolant
double spectral_area(const std::vector<double>& h) {
  const int M = static_cast<int>(h.size());
  std::vector<double> a, b;
  fourier(h, a, b);
  double s2 = 0.0;
  for (double x : h) s2 += x * x;
  double d2 = 0.0;
  for (int k = 1; k < static_cast<int>(a.size()); ++k)
    d2 += static_cast<double>(k) * k * (a[k] * a[k] + b[k] * b[k]);
  return 0.5 * (2.0 * kPi / M * s2 - kPi * d2);
}

}  // namespace

std::vector<double> d1_spectral(const std::vector<double>& h) {
  const int M = static_cast<int>(h.size());
  std::vector<double> a, b;
  fourier(h, a, b);
  TrigTable t(M);
  std::vector<double> d(M, 0.0);
  for (int i = 0; i < M; ++i) {
    double s = 0.0;
    long idx = 0;
    for (int k = 1; k < static_cast<int>(a.size()); ++k) {
      idx += i;
      idx %= M;
      s += k * (-a[k] * t.s[idx] + b[k] * t.c[idx]);
    }
    d[i] = s;
  }
  return d;
}

std::vector<double> d2h(const SupportFn& h) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("d2h needs the smooth regime");
  std::vector<double> d = d2h_raw(h.values(), h.grid().step());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i] > 0))
      throw NonConvex("h + h'' = " + std::to_string(d[i]) + " at node " + std::to_string(i),
                      static_cast<int>(i));
  return d;
}

bool is_admissible(const SupportFn& h, double floor) {
  if (h.regime() != Regime::smooth_circle) return h.min_value() > 0;
  const auto d = d2h_raw(h.values(), h.grid().step());
  return std::all_of(d.begin(), d.end(), [&](double x) { return x > floor; });
}

Body make_polytope_body(const SupportFn& h);  // polytope.cpp

Body make_body(const SupportFn& h) {
  if (h.regime() == Regime::polytope) return make_polytope_body(h);
  d2h(h);
  Body b;
  b.support = h;
  b.volume = spectral_area(h.values());
  if (!(b.volume > 0)) throw EmptyInterior("nonpositive area");
  return b;
}

double body_volume(const SupportFn& h) { return make_body(h).volume; }

double perimeter(const SupportFn& h) {
  if (h.dim() != 2) throw InvalidInput("perimeter is defined for n = 2");
  if (h.regime() == Regime::smooth_circle) {
    double s = 0.0;
    for (double x : h.values()) s += x;
    return s * h.grid().step();
  }
  return make_body(h).boundary_measure();
}

DiscreteMeasure ConeMeasure::discrete() const {
  return regime == Regime::smooth_circle ? slok::discrete(density) : slok::discrete(atoms);
}

ConeMeasure cone_measure(const SupportFn& h) {
  ConeMeasure c;
  c.regime = h.regime();
  if (h.regime() == Regime::smooth_circle) {
    const auto d = d2h(h);
    const auto hv = h.values();
    std::vector<double> rho(hv.size());
    for (std::size_t i = 0; i < hv.size(); ++i) rho[i] = hv[i] * d[i];
    c.density = normalized_density(h.grid(), std::move(rho));
    return c;
  }
  const Body b = make_body(h);
  c.dropped_degenerate = !b.inactive.empty();
  std::vector<UnitVector> pts;
  std::vector<double> w;
  const double scale = std::pow(b.volume, (h.dim() - 1.0) / h.dim());
  for (const auto& f : b.facets) {
    if (f.area < tol::degenerate_facet * scale) {
      c.dropped_degenerate = true;
      continue;
    }
    pts.push_back(f.normal);
    w.push_back(f.h * f.area / (h.dim() * b.volume));
    c.atom_direction.push_back(f.direction);
  }
  double s = 0.0;
  for (double x : w) s += x;
  for (double& x : w) x /= s;
  c.atoms = AtomicMeasure{h.dim(), std::move(pts), std::move(w), false};
  c.atoms.symmetric = is_symmetric(c.atoms, 1e-12);
  return c;
}

double radial_at(const SupportFn& h, const UnitVector& y) {
  double r = std::numeric_limits<double>::infinity();
  for (int j = 0; j < h.size(); ++j) {
    const double d = dot(h.direction(j), y);
    if (d > tol::orthogonal) r = std::min(r, h.value(j) / d);
  }
  return r;
}

double support_at(const RadialFn& r, const UnitVector& x) {
  double h = 0.0;
  for (int j = 0; j < r.size(); ++j) h = std::max(h, r.value(j) * dot(x, r.direction(j)));
  return h;
}

RadialFn radial_from_support(const SupportFn& h) {
  std::vector<double> r(h.size());
  // each pair once
  std::vector<double> half(h.pair_count(), -1.0);
  for (int i = 0; i < h.size(); ++i) {
    const int p = h.pair_of(i);
    if (half[p] < 0) half[p] = radial_at(h, h.direction(i));
    r[i] = half[p];
  }
  if (h.regime() == Regime::smooth_circle) return RadialFn::smooth(h.grid(), r);
  return RadialFn::on_directions(h.directions(), r);
}

SupportFn support_from_radial(const RadialFn& r) {
  std::vector<double> h(r.size());
  std::vector<double> half(r.pair_count(), -1.0);
  for (int i = 0; i < r.size(); ++i) {
    const int p = r.pair_of(i);
    if (half[p] < 0) half[p] = support_at(r, r.direction(i));
    h[i] = half[p];
  }
  if (r.regime() == Regime::smooth_circle) return SupportFn::smooth(r.grid(), h);
  return SupportFn::polytope(r.directions(), h);
}

double polar_volume(const SupportFn& h) {
  if (h.regime() == Regime::smooth_circle) {
    d2h(h);
    double s = 0.0;
    const auto& w = h.grid().sigma_weights();
    const auto hv = h.values();
    for (std::size_t i = 0; i < hv.size(); ++i) s += w[i] / (hv[i] * hv[i]);
    return unit_ball_volume(2) * s;
  }
  // polar polytope: normals along the vertices, support 1/|v|
  const Body b = make_body(h);
  std::vector<UnitVector> normals;
  std::vector<double> sup;
  for (const auto& v : b.vertices) {
    double s = 0.0;
    for (int i = 0; i < h.dim(); ++i) s += v[i] * v[i];
    s = std::sqrt(s);
    normals.push_back(UnitVector::from(v, h.dim()));
    sup.push_back(1.0 / s);
  }
  return body_volume(SupportFn::polytope(normals, sup));
}

std::vector<double> curvature(const SupportFn& h) {
  auto d = d2h(h);
  for (double& x : d) x = 1.0 / x;
  return d;
}

SupportFn ball_support(const DirectionGrid& grid, double radius) {
  return SupportFn::smooth(grid, std::vector<double>(grid.size(), radius));
}

SupportFn ellipse_support(const DirectionGrid& grid, double a, double b) {
  std::vector<double> h(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const auto& u = grid.node(i);
    h[i] = std::sqrt(a * a * u[0] * u[0] + b * b * u[1] * u[1]);
  }
  return SupportFn::smooth(grid, h);
}

SupportFn box_support(const std::vector<double>& half_widths) {
  const int n = static_cast<int>(half_widths.size());
  if (n != 2 && n != 3) throw InvalidInput("box needs 2 or 3 half widths");
  std::vector<UnitVector> normals;
  for (int i = 0; i < n; ++i) {
    Vec3 e{0.0, 0.0, 0.0};
    e[i] = 1.0;
    normals.push_back(UnitVector::from(e, n));
  }
  return SupportFn::polytope(normals, half_widths);
}

std::string regime_name(Regime r) { return r == Regime::smooth_circle ? "smooth" : "polytope"; }

}  // namespace slok
