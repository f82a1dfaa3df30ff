#include "slok/lmn.hpp"

#include <cmath>

#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

namespace {

void check_field(const SupportFn& h, const std::vector<double>& u, const char* what) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("operator needs the smooth regime");
  if (static_cast<int>(u.size()) != h.size())
    throw InvalidInput(std::string(what) + " length does not match the grid");
}

void check_density(const SupportFn& h, const GridDensity& m) {
  if (m.size() != h.size()) throw InvalidInput("density lives on another grid");
}

}  // namespace

MetricField metric_field(const SupportFn& h) {
  const auto d = d2h(h);
  MetricField m{h.grid(), {}};
  m.g.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.g[i] = d[i] / h.value(static_cast<int>(i));
  return m;
}

std::vector<double> apply_L_cone(const SupportFn& h, const std::vector<double>& u) {
  check_field(h, u, "u");
  const auto d = d2h(h);
  const auto du = d2h_raw(u, h.grid().step());
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = du[i] / d[i] - u[i] / h.value(static_cast<int>(i));
  return out;
}

std::vector<double> apply_L_general(const SupportFn& h, const GridDensity& nu,
                                    const std::vector<double>& u) {
  check_field(h, u, "u");
  check_density(h, nu);
  for (double r : nu.rho)
    if (!(r > 0)) throw NonPositiveDensity("target density must be positive");
  const int M = h.size();
  const double step = h.grid().step();
  const int n = 2;
  const auto d = d2h(h);
  const auto hv = h.values();
  const auto hp = d1_central(hv, step);
  const auto du = d2h_raw(u, step);
  const auto up = d1_central(u, step);
  std::vector<double> W(M);
  for (int i = 0; i < M; ++i) W[i] = -std::log(nu.rho[i]);
  const auto Wp = d1_central(W, step);
  std::vector<double> out(M);
  for (int i = 0; i < M; ++i) {
    const double T = h.grid().angle(i) + std::atan(hp[i] / hv[i]);
    double x = T / step;
    x -= M * std::floor(x / M);
    int i0 = static_cast<int>(std::floor(x));
    const double fr = x - i0;
    i0 %= M;
    const double wt = (1.0 - fr) * Wp[i0] + fr * Wp[(i0 + 1) % M];
    const double s2 = hv[i] * hv[i] + hp[i] * hp[i];
    out[i] = du[i] / d[i] - (wt * (up[i] * hv[i] - u[i] * hp[i]) + n * (u[i] * hv[i] + up[i] * hp[i])) / s2 +
             u[i] / hv[i];
  }
  return out;
}

double dirichlet_form(const SupportFn& h, const std::vector<double>& f, const std::vector<double>& g,
                      const GridDensity& mu) {
  check_field(h, f, "f");
  check_field(h, g, "g");
  check_density(h, mu);
  const auto d = d2h(h);
  const int M = h.size();
  const double step = h.grid().step();
  // q = h rho / (h + h''), averaged geometrically between nodes
  std::vector<double> q(M);
  for (int i = 0; i < M; ++i) q[i] = h.value(i) * mu.rho[i] / d[i];
  double s = 0.0;
  for (int i = 0; i < M; ++i) {
    const int j = (i + 1) % M;
    s += (g[j] - g[i]) * (f[j] - f[i]) * std::sqrt(q[i] * q[j]);
  }
  return s / (step * step) / M;
}

double dirichlet_residual(const SupportFn& h, const std::vector<double>& f,
                          const std::vector<double>& g, const GridDensity& mu) {
  std::vector<double> u(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) u[i] = h.value(static_cast<int>(i)) * f[i];
  const auto L = apply_L_cone(h, u);
  double rhs = 0.0;
  for (int i = 0; i < h.size(); ++i) rhs -= g[i] * L[i] * mu.weight(i);
  return std::abs(dirichlet_form(h, f, g, mu) - rhs);
}

double infinitesimal_uniqueness_gap(const SupportFn& h, const GridDensity& mu,
                                    const std::vector<double>& u) {
  check_field(h, u, "u");
  check_density(h, mu);
  const auto d = d2h(h);
  const auto du = d2h_raw(u, h.grid().step());
  const int n = 2;
  double a = 0.0, b = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    const double t = du[i] / d[i];
    const double v = u[i] / h.value(i);
    a += t * t * mu.weight(i);
    b += v * v * mu.weight(i);
  }
  return a - (n - 1) * b;
}

}  // namespace slok
