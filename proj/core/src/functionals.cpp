#include "slok/functionals.hpp"

#include <cmath>
#include <limits>

#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int direction_index(const SupportFn& h, const UnitVector& x, int hint) {
  if (hint >= 0 && hint < h.size() && h.direction(hint) == x) return hint;
  for (int i = 0; i < h.size(); ++i)
    if (h.direction(i) == x) return i;
  for (int i = 0; i < h.size(); ++i)
    if (angular_distance(h.direction(i), x) <= tol::merge_angle) return i;
  throw InvalidInput("measure atom is not a direction of the support function");
}

}  // namespace

double entropy(const GridDensity& nu) {
  double s = 0.0;
  for (int i = 0; i < nu.size(); ++i)
    if (nu.rho[i] > 0) s += nu.rho[i] * std::log(nu.rho[i]) * nu.grid.weight(i);
  return s;
}

double entropy(const AtomicMeasure&) { return kInf; }

double relative_entropy(const GridDensity& nu, const GridDensity& m) {
  if (nu.size() != m.size()) throw InvalidInput("densities live on different grids");
  double s = 0.0;
  for (int i = 0; i < nu.size(); ++i) {
    if (!(nu.rho[i] > 0)) continue;
    if (!(m.rho[i] > 0)) return kInf;
    s += nu.rho[i] * std::log(nu.rho[i] / m.rho[i]) * nu.grid.weight(i);
  }
  return s;
}

double FunctionalReport::term(const std::string& key) const {
  for (const auto& [k, v] : terms)
    if (k == key) return v;
  throw InvalidInput("no term named " + key);
}

FunctionalReport F(const GridDensity& nu, const DiscreteMeasure& mu) {
  FunctionalReport r;
  r.name = "F";
  const double ent = entropy(nu) / nu.grid.dim();
  const auto sol = solve_plan(mu, discrete(nu));
  r.terms = {{"Ent/n", ent}, {"K", sol.plan.K}};
  r.value = ent - sol.plan.K;
  r.residuals.push_back(
      {"duality", std::abs(sol.plan.K - sol.duals.dual_value(mu, discrete(nu))), 1e-8});
  return r;
}

double F0(const SupportFn& h, const DiscreteMeasure& mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    if (!(mu.mass[i] > 0)) continue;
    const int j = direction_index(h, mu.points[i], static_cast<int>(i));
    s += mu.mass[i] * std::log(h.value(j));
  }
  return s;
}

double F0(const SupportFn& h, const GridDensity& mu) { return F0(h, discrete(mu)); }

double scale_free_F0(const SupportFn& h, const DiscreteMeasure& mu) {
  return F0(h, mu) - std::log(body_volume(h)) / h.dim();
}

double ek_identity_residual(const SupportFn& h, const GridDensity& mu, const GridDensity& nu) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("EK identity needs the smooth regime");
  const auto d = d2h(h);
  const int n = 2;
  double rhs = entropy(mu) / n;
  for (int i = 0; i < h.size(); ++i)
    rhs -= std::log(d[i] / h.value(i)) * mu.weight(i) / n;
  const double K = transport_value(discrete(mu), discrete(nu));
  return std::abs(entropy(nu) / n - K - rhs);
}

FunctionalReport duality_decomposition(const GridDensity& mu, const GridDensity& nu) {
  const auto dm = discrete(mu), dn = discrete(nu);
  const auto sol = solve_plan(dm, dn);
  const auto tb = duals_to_body(sol.duals, dm, dn, Gauge::unit_volume);
  if (!tb.grid_quadrature) throw InvalidInput("target must live on a circle grid");
  const int n = 2;
  const double ball = unit_ball_volume(n);
  double f0 = 0.0;
  for (std::size_t i = 0; i < dm.mass.size(); ++i)
    if (dm.mass[i] > 0) f0 += dm.mass[i] * tb.duals.phi[i];
  // m = r^n sigma / C, C = int r^n dsigma
  const auto r = tb.r_at_targets();
  double C = 0.0;
  for (int j = 0; j < nu.size(); ++j) C += std::pow(r[j], n) * nu.grid.weight(j);
  std::vector<double> m(nu.size());
  for (int j = 0; j < nu.size(); ++j) m[j] = std::pow(r[j], n) / C;
  GridDensity md{nu.grid, m, nu.symmetric};
  const double ent_m = relative_entropy(nu, md);
  const double direct = entropy(nu) / n - sol.plan.K;

  FunctionalReport rep;
  rep.name = "duality_decomposition";
  rep.terms = {{"F0", f0},
               {"log|B|/n", std::log(ball) / n},
               {"Ent_m/n", ent_m / n},
               {"F", direct},
               {"volume", tb.volume}};
  rep.value = f0 + std::log(ball) / n + ent_m / n;
  rep.residuals.push_back({"decomposition", std::abs(rep.value - direct), 1e-6});
  rep.residuals.push_back({"gauge", std::abs(tb.volume - 1.0), 1e-8});
  return rep;
}

WBounds w_bounds(const GridDensity& nu) {
  WBounds w;
  const int n = nu.grid.dim();
  w.entropy = entropy(nu);
  const double e = std::exp(-w.entropy / n);
  w.w2_bound = 1.0 - e;
  w.w1_bound = std::acos(std::min(1.0, e));
  const auto sigma = discrete(uniform_density(nu.grid));
  const auto dn = discrete(nu);
  w.w2_squared = solve_plan(sigma, dn, cost_matrix(sigma, dn, chordal_cost)).plan.K;
  w.w1 = solve_plan(sigma, dn, cost_matrix(sigma, dn, geodesic_cost)).plan.K;
  return w;
}

}  // namespace slok
