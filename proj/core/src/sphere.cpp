#include "slok/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

UnitVector UnitVector::from(std::span<const double> coords) {
  if (coords.size() != 2 && coords.size() != 3)
    throw InvalidInput("unit vector needs 2 or 3 coordinates");
  Vec3 v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = coords[i];
  return from(v, static_cast<int>(coords.size()));
}

UnitVector UnitVector::from(const Vec3& v, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) throw InvalidInput("non-finite coordinate");
    s += v[i] * v[i];
  }
  if (!(s > 0.0)) throw InvalidInput("zero vector cannot be normalized");
  UnitVector u;
  u.n = n;
  u.c = {0.0, 0.0, 0.0};
  const double norm = std::sqrt(s);
  // leave exact unit inputs untouched
  const bool exact = std::abs(s - 1.0) <= 1e-15;
  for (int i = 0; i < n; ++i) u.c[i] = exact ? v[i] : v[i] / norm;
  return u;
}

UnitVector UnitVector::angle(double theta) {
  UnitVector u;
  u.n = 2;
  u.c = {std::cos(theta), std::sin(theta), 0.0};
  return u;
}

double dot(const UnitVector& a, const UnitVector& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

double angle_of(const UnitVector& u) {
  double t = std::atan2(u.c[1], u.c[0]);
  if (t < 0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t -= 2.0 * kPi;
  return t;
}

double angular_distance(const UnitVector& a, const UnitVector& b) {
  // atan2 form keeps accuracy near 0 and pi
  const Vec3 x{a.c[1] * b.c[2] - a.c[2] * b.c[1], a.c[2] * b.c[0] - a.c[0] * b.c[2],
               a.c[0] * b.c[1] - a.c[1] * b.c[0]};
  const double s = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  return std::atan2(s, dot(a, b));
}

double DirectionGrid::step() const { return 2.0 * kPi / static_cast<double>(nodes_.size()); }

double DirectionGrid::angle(int i) const { return step() * static_cast<double>(i); }

DirectionGrid make_circle_grid(int M) {
  if (M < 8) throw InvalidInput("circle grid needs M >= 8, got " + std::to_string(M));
  if (M % 2 != 0) throw InvalidInput("circle grid needs even M, got " + std::to_string(M));
  DirectionGrid g;
  g.nodes_.resize(M);
  g.weights_.assign(M, 1.0 / static_cast<double>(M));
  g.antipode_.resize(M);
  const int half = M / 2;
  for (int k = 0; k < half; ++k) {
    UnitVector u;
    u.n = 2;
    if ((4 * k) % M == 0) {
      // axis nodes exact
      u.c = (4 * k) / M == 0 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    } else {
      const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M);
      u.c = {std::cos(t), std::sin(t), 0.0};
    }
    g.nodes_[k] = u;
    g.nodes_[k + half] = -u;
    g.antipode_[k] = k + half;
    g.antipode_[k + half] = k;
  }
  return g;
}

double AtomicMeasure::mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double GridDensity::mass() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += rho[i] * grid.weight(i);
  return s;
}

std::vector<double> GridDensity::weights() const {
  std::vector<double> w(rho.size());
  for (int i = 0; i < size(); ++i) w[i] = weight(i);
  return w;
}

std::vector<double> GridDensity::potential() const {
  std::vector<double> v(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    v[i] = rho[i] > 0 ? -std::log(rho[i]) : HUGE_VAL;
  return v;
}

bool is_symmetric(const GridDensity& g) {
  for (int i = 0; i < g.size(); ++i)
    if (g.rho[i] != g.rho[g.grid.antipode(i)]) return false;
  return true;
}

GridDensity make_grid_density(const DirectionGrid& grid, std::vector<double> rho) {
  if (static_cast<int>(rho.size()) != grid.size())
    throw InvalidInput("density length does not match grid");
  for (double r : rho)
    if (!std::isfinite(r) || r < 0) throw InvalidInput("density must be finite and nonnegative");
  GridDensity d{grid, std::move(rho), false};
  if (std::abs(d.mass() - 1.0) > tol::mass)
    throw InvalidInput("density mass " + std::to_string(d.mass()) + " is not 1");
  d.symmetric = is_symmetric(d);
  return d;
}

GridDensity normalized_density(const DirectionGrid& grid, std::vector<double> rho) {
  if (static_cast<int>(rho.size()) != grid.size())
    throw InvalidInput("density length does not match grid");
  double s = 0.0;
  for (int i = 0; i < grid.size(); ++i) s += rho[i] * grid.weight(i);
  if (!(s > 0) || !std::isfinite(s)) throw InvalidInput("density has no mass");
  for (double& r : rho) r /= s;
  return make_grid_density(grid, std::move(rho));
}

bool is_symmetric(const AtomicMeasure& m, double tol) {
  for (int i = 0; i < m.size(); ++i) {
    bool found = false;
    for (int j = 0; j < m.size(); ++j) {
      if (angular_distance(m.points[j], -m.points[i]) <= tol &&
          std::abs(m.weights[j] - m.weights[i]) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

AtomicMeasure make_atomic(int n, std::vector<UnitVector> points, std::vector<double> weights) {
  if (points.empty()) throw InvalidInput("empty measure");
  if (points.size() != weights.size()) throw InvalidInput("points and weights differ in length");
  for (const auto& p : points)
    if (p.n != n) throw InvalidInput("mixed dimensions in atomic measure");
  for (double w : weights)
    if (!std::isfinite(w) || !(w > 0)) throw InvalidInput("atom weights must be positive");
  AtomicMeasure m{n, std::move(points), std::move(weights), false};
  if (std::abs(m.mass() - 1.0) > tol::weight_sum)
    throw InvalidInput("atom weights must sum to 1");
  m.symmetric = is_symmetric(m);
  return m;
}

AtomicMeasure make_sym_directions(const std::vector<UnitVector>& points,
                                  const std::vector<double>& weights) {
  if (points.empty()) throw InvalidInput("empty direction list");
  if (points.size() != weights.size()) throw InvalidInput("points and weights differ in length");
  const int n = points.front().n;
  std::vector<UnitVector> out;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].n != n) throw InvalidInput("mixed dimensions");
    if (!std::isfinite(weights[i]) || weights[i] < 0) throw InvalidInput("negative weight");
    total += weights[i];
    int hit = -1;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (angular_distance(out[j], points[i]) <= tol::merge_angle) {
        hit = static_cast<int>(j);
        break;
      }
    if (hit < 0) {
      out.push_back(points[i]);
      out.push_back(-points[i]);
      w.push_back(0.0);
      w.push_back(0.0);
      hit = static_cast<int>(out.size()) - 2;
    }
    // pairs are stored adjacently
    const int mate = hit % 2 == 0 ? hit + 1 : hit - 1;
    w[hit] += 0.5 * weights[i];
    w[mate] += 0.5 * weights[i];
  }
  if (!(total > 0)) throw InvalidInput("zero total weight");
  std::vector<UnitVector> pts;
  std::vector<double> ws;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (w[j] <= 0) continue;
    pts.push_back(out[j]);
    ws.push_back(w[j] / total);
  }
  AtomicMeasure m{n, std::move(pts), std::move(ws), true};
  return m;
}

GridDensity uniform_density(const DirectionGrid& grid) {
  GridDensity d{grid, std::vector<double>(grid.size(), 1.0), true};
  return d;
}

int nearest_node(const DirectionGrid& grid, const UnitVector& u) {
  int best = 0;
  double bd = -2.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double d = dot(grid.node(i), u);
    if (d > bd + 1e-14) {
      bd = d;
      best = i;
    }
  }
  return best;
}

GridDensity bin_to_grid(const AtomicMeasure& m, const DirectionGrid& grid) {
  if (m.n != 2) throw InvalidInput("binning needs a circle measure");
  std::vector<double> mass(grid.size(), 0.0);
  for (int a = 0; a < m.size(); ++a) mass[nearest_node(grid, m.points[a])] += m.weights[a];
  if (m.symmetric) {
    std::vector<double> s(mass.size());
    for (int i = 0; i < grid.size(); ++i) s[i] = 0.5 * (mass[i] + mass[grid.antipode(i)]);
    mass = std::move(s);
  }
  std::vector<double> rho(grid.size());
  for (int i = 0; i < grid.size(); ++i) rho[i] = mass[i] / grid.weight(i);
  GridDensity d{grid, std::move(rho), false};
  d.symmetric = is_symmetric(d);
  return d;
}

DiscreteMeasure discrete(const AtomicMeasure& m) { return {m.n, m.points, m.weights}; }

DiscreteMeasure discrete(const GridDensity& g) {
  return {2, g.grid.nodes(), g.weights()};
}

}  // namespace slok
