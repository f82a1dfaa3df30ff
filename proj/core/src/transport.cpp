#include "slok/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "network_simplex.hpp"
#include "slok/config.hpp"

namespace slok {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_measures(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.points.empty() || nu.points.empty()) throw InvalidInput("empty measure");
  if (mu.points.size() != mu.mass.size() || nu.points.size() != nu.mass.size())
    throw InvalidInput("points and masses differ in length");
  if (mu.n != nu.n) throw InvalidInput("measures live on different spheres");
  for (const auto* m : {&mu, &nu})
    for (double w : m->mass)
      if (!std::isfinite(w) || w < 0) throw InvalidInput("masses must be finite and nonnegative");
  const double a = total(mu.mass), b = total(nu.mass);
  if (std::abs(a - b) > tol::mass)
    throw InvalidInput("source and target masses differ: " + std::to_string(a) + " vs " +
                       std::to_string(b));
}

// Dinic max flow on the bipartite graph of allowed pairs
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}
  void add(int u, int v, double cap) {
    to_.push_back(v);
    cap_.push_back(cap);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0.0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }
  double run(int s, int t) {
    double f = 0.0;
    while (bfs(s, t)) {
      it_ = head_;
      for (;;) {
        const double pushed = dfs(s, t, kInf);
        if (pushed <= 0) break;
        f += pushed;
      }
    }
    return f;
  }
  // residual reachability from s
  std::vector<char> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const int u = q.back();
      q.pop_back();
      for (int e = head_[u]; e >= 0; e = next_[e])
        if (cap_[e] > kEps && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          q.push_back(to_[e]);
        }
    }
    return seen;
  }

 private:
  static constexpr double kEps = 1e-15;
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e >= 0; e = next_[e])
        if (cap_[e] > kEps && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
    }
    return level_[t] >= 0;
  }
  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& e = it_[u]; e >= 0; e = next_[e]) {
      const int v = to_[e];
      if (cap_[e] > kEps && level_[v] == level_[u] + 1) {
        const double d = dfs(v, t, std::min(f, cap_[e]));
        if (d > 0) {
          cap_[e] -= d;
          cap_[e ^ 1] += d;
          return d;
        }
      }
    }
    return 0.0;
  }
  std::vector<int> head_, to_, next_, level_, it_;
  std::vector<double> cap_;
};

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<double> dijkstra(const std::vector<std::vector<std::pair<int, double>>>& g, int s) {
  std::vector<double> d(g.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  d[s] = 0.0;
  q.push({0.0, s});
  while (!q.empty()) {
    auto [du, u] = q.top();
    q.pop();
    if (du > d[u]) continue;
    for (const auto& [v, w] : g[u])
      if (du + w < d[v]) {
        d[v] = du + w;
        q.push({d[v], v});
      }
  }
  return d;
}

}  // namespace

double cost(const UnitVector& x, const UnitVector& y) {
  if (x == y) return 0.0;
  const double d = dot(x, y);
  if (d <= tol::orthogonal) return kInf;
  return d >= 1.0 ? 0.0 : -std::log(d);
}

bool CostMatrix::allowed(int i, int j) const { return std::isfinite((*this)(i, j)); }

CostMatrix log_cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  CostMatrix m;
  m.rows = static_cast<int>(mu.points.size());
  m.cols = static_cast<int>(nu.points.size());
  m.c.resize(static_cast<std::size_t>(m.rows) * m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      m.c[static_cast<std::size_t>(i) * m.cols + j] = cost(mu.points[i], nu.points[j]);
  return m;
}

CostMatrix cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::function<double(double)>& of_dot) {
  CostMatrix m;
  m.rows = static_cast<int>(mu.points.size());
  m.cols = static_cast<int>(nu.points.size());
  m.c.resize(static_cast<std::size_t>(m.rows) * m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const double d = mu.points[i] == nu.points[j] ? 1.0 : dot(mu.points[i], nu.points[j]);
      m.c[static_cast<std::size_t>(i) * m.cols + j] = of_dot(std::clamp(d, -1.0, 1.0));
    }
  return m;
}

double chordal_cost(double d) { return std::max(0.0, 2.0 - 2.0 * d); }
double geodesic_cost(double d) { return std::acos(d); }

FeasibilityResult feasibility_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return feasibility_check(mu, nu, log_cost_matrix(mu, nu));
}

FeasibilityResult feasibility_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    const CostMatrix& c) {
  check_measures(mu, nu);
  const int R = c.rows, C = c.cols;
  const int s = R + C, t = R + C + 1;
  MaxFlow mf(R + C + 2);
  for (int i = 0; i < R; ++i)
    if (mu.mass[i] > 0) mf.add(s, i, mu.mass[i]);
  for (int j = 0; j < C; ++j)
    if (nu.mass[j] > 0) mf.add(R + j, t, nu.mass[j]);
  for (int i = 0; i < R; ++i) {
    if (!(mu.mass[i] > 0)) continue;
    for (int j = 0; j < C; ++j)
      if (nu.mass[j] > 0 && c.allowed(i, j)) mf.add(i, R + j, kInf);
  }
  FeasibilityResult r;
  r.flow = mf.run(s, t);
  const double need = total(mu.mass);
  r.feasible = std::abs(r.flow - need) <= tol::feasible_flow;
  if (!r.feasible) {
    const auto seen = mf.reachable(s);
    for (int i = 0; i < R; ++i)
      if (seen[i] && mu.mass[i] > 0) {
        r.witness.rows.push_back(i);
        r.witness.source_mass += mu.mass[i];
      }
    for (int j = 0; j < C; ++j)
      if (seen[R + j] && nu.mass[j] > 0) {
        r.witness.cols.push_back(j);
        r.witness.target_mass += nu.mass[j];
      }
  }
  return r;
}

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> s(rows, 0.0);
  for (const auto& e : entries) s[e.i] += e.mass;
  return s;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> s(cols, 0.0);
  for (const auto& e : entries) s[e.j] += e.mass;
  return s;
}

std::string gauge_name(Gauge g) { return g == Gauge::unit_volume ? "unit_volume" : "h0_equals_1"; }

double DualPair::dual_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    if (nu.mass[j] > 0) s += nu.mass[j] * psi[j];
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (mu.mass[i] > 0) s -= mu.mass[i] * phi[i];
  return s;
}

std::vector<int> antipode_map(const DiscreteMeasure& m) {
  const int k = static_cast<int>(m.points.size());
  std::vector<int> a(k, -1);
  for (int i = 0; i < k; ++i) {
    const UnitVector neg = -m.points[i];
    for (int j = 0; j < k; ++j)
      if (m.points[j] == neg) {
        a[i] = j;
        break;
      }
    if (a[i] >= 0) continue;
    for (int j = 0; j < k; ++j)
      if (angular_distance(m.points[j], neg) <= tol::merge_angle) {
        a[i] = j;
        break;
      }
  }
  return a;
}

bool is_circle_grid(const DiscreteMeasure& m) {
  const int M = static_cast<int>(m.points.size());
  if (m.n != 2 || M < 8 || M % 2) return false;
  const DirectionGrid g = make_circle_grid(M);
  for (int i = 0; i < M; ++i)
    if (!(g.node(i) == m.points[i])) return false;
  return true;
}

TransportSolution solve_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return solve_plan(mu, nu, log_cost_matrix(mu, nu));
}

TransportSolution solve_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const CostMatrix& c) {
  const auto feas = feasibility_check(mu, nu, c);
  if (!feas.feasible)
    throw Infeasible("no coupling avoids the forbidden pairs (max flow " +
                         std::to_string(feas.flow) + ")",
                     feas.witness);
  const int R = c.rows, C = c.cols;
  std::vector<int> rows, cols, row_pos(R, -1), col_pos(C, -1);
  for (int i = 0; i < R; ++i)
    if (mu.mass[i] > 0) {
      row_pos[i] = static_cast<int>(rows.size());
      rows.push_back(i);
    }
  for (int j = 0; j < C; ++j)
    if (nu.mass[j] > 0) {
      col_pos[j] = static_cast<int>(cols.size());
      cols.push_back(j);
    }
  std::vector<double> supply, demand;
  for (int i : rows) supply.push_back(mu.mass[i]);
  for (int j : cols) demand.push_back(nu.mass[j]);
  std::vector<int> as, ad;
  std::vector<double> ac;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double cij = c(rows[a], cols[b]);
      if (!std::isfinite(cij)) continue;
      as.push_back(static_cast<int>(a));
      ad.push_back(static_cast<int>(b));
      ac.push_back(cij);
    }
  detail::NetworkSimplex ns(supply, demand, as, ad, ac);
  const bool ok = ns.run(1000L * (R + C) * (R + C) + 100000);
  if (!ns.optimal()) throw Error("transportation simplex hit the pivot limit");
  if (!ok) throw Infeasible("artificial flow remains", feas.witness);

  TransportSolution sol;
  sol.stats.pivots = ns.pivots();
  sol.stats.degenerate_pivots = ns.degenerate_pivots();
  sol.plan.rows = R;
  sol.plan.cols = C;
  const auto& flow = ns.flow();
  const int Ra = static_cast<int>(rows.size()), Ca = static_cast<int>(cols.size());
  UnionFind uf(Ra + Ca);
  double K = 0.0;
  for (std::size_t e = 0; e < as.size(); ++e)
    if (flow[e] > 0) {
      sol.plan.entries.push_back({rows[as[e]], cols[ad[e]], flow[e]});
      K += flow[e] * ac[e];
      uf.unite(as[e], Ra + ad[e]);
    }
  sol.plan.K = K;

  std::vector<double> u = ns.source_potentials();
  std::vector<double> v = ns.sink_potentials();

  // center the free offsets between support components
  std::vector<int> comp(Ra + Ca, -1);
  int ncomp = 0;
  {
    std::vector<int> id(Ra + Ca, -1);
    for (int x = 0; x < Ra + Ca; ++x) {
      const int r = uf.find(x);
      if (id[r] < 0) id[r] = ncomp++;
      comp[x] = id[r];
    }
  }
  sol.stats.components = ncomp;
  if (ncomp > 1) {
    std::vector<std::vector<std::pair<int, double>>> fwd(ncomp), bwd(ncomp);
    for (std::size_t e = 0; e < as.size(); ++e) {
      const int k = comp[as[e]], l = comp[Ra + ad[e]];
      if (k == l) continue;
      const double slack = std::max(0.0, ac[e] - u[as[e]] - v[ad[e]]);
      fwd[l].push_back({k, slack});
      bwd[k].push_back({l, slack});
    }
    const int ref = comp[0];
    const auto up = dijkstra(fwd, ref);
    const auto down = dijkstra(bwd, ref);
    bool finite = true;
    for (int k = 0; k < ncomp; ++k) finite = finite && std::isfinite(up[k]) && std::isfinite(down[k]);
    if (finite) {
      for (int a = 0; a < Ra; ++a) u[a] += 0.5 * (up[comp[a]] - down[comp[a]]);
      for (int b = 0; b < Ca; ++b) v[b] -= 0.5 * (up[comp[Ra + b]] - down[comp[Ra + b]]);
      sol.stats.centered = true;
    }
  }

  // average with the antipodal reflection when both sides are symmetric
  {
    const auto amu = antipode_map(mu);
    const auto anu = antipode_map(nu);
    bool sym = true;
    for (int i : rows)
      sym = sym && amu[i] >= 0 && row_pos[amu[i]] >= 0 &&
            std::abs(mu.mass[amu[i]] - mu.mass[i]) <= 1e-14;
    for (int j : cols)
      sym = sym && anu[j] >= 0 && col_pos[anu[j]] >= 0 &&
            std::abs(nu.mass[anu[j]] - nu.mass[j]) <= 1e-14;
    if (sym) {
      std::vector<double> u2(Ra), v2(Ca);
      for (int a = 0; a < Ra; ++a) u2[a] = 0.5 * (u[a] + u[row_pos[amu[rows[a]]]]);
      for (int b = 0; b < Ca; ++b) v2[b] = 0.5 * (v[b] + v[col_pos[anu[cols[b]]]]);
      u = std::move(u2);
      v = std::move(v2);
      sol.stats.symmetrized = true;
    }
  }

  // c-transform onto zero-mass points
  std::vector<double> U(R, kInf), V(C, kInf);
  for (int a = 0; a < Ra; ++a) U[rows[a]] = u[a];
  for (int i = 0; i < R; ++i) {
    if (row_pos[i] >= 0) continue;
    for (int b = 0; b < Ca; ++b) {
      const double cij = c(i, cols[b]);
      if (std::isfinite(cij)) U[i] = std::min(U[i], cij - v[b]);
    }
  }
  for (int b = 0; b < Ca; ++b) V[cols[b]] = v[b];
  for (int j = 0; j < C; ++j) {
    if (col_pos[j] >= 0) continue;
    for (int i = 0; i < R; ++i) {
      const double cij = c(i, j);
      if (std::isfinite(cij) && std::isfinite(U[i])) V[j] = std::min(V[j], cij - U[i]);
    }
  }
  DualPair& d = sol.duals;
  d.phi.resize(R);
  d.psi.resize(C);
  const double shift = U[0];  // phi_0 = -U_0 moved to 0
  for (int i = 0; i < R; ++i) d.phi[i] = -(U[i] - shift);
  for (int j = 0; j < C; ++j) d.psi[j] = V[j] + shift;
  d.gauge = Gauge::h0_equals_1;
  d.K = K;
  return sol;
}

double transport_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return solve_plan(mu, nu).plan.K;
}

SinkhornResult sinkhorn(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double eps,
                        int max_iter) {
  check_measures(mu, nu);
  if (!(eps >= 1e-3 && eps <= 1.0)) throw InvalidInput("sinkhorn eps must lie in [1e-3, 1]");
  const CostMatrix c = log_cost_matrix(mu, nu);
  const int R = c.rows, C = c.cols;
  std::vector<int> rows, cols;
  for (int i = 0; i < R; ++i)
    if (mu.mass[i] > 0) rows.push_back(i);
  for (int j = 0; j < C; ++j)
    if (nu.mass[j] > 0) cols.push_back(j);
  const int Ra = static_cast<int>(rows.size()), Ca = static_cast<int>(cols.size());
  std::vector<double> la(Ra), lb(Ca), f(Ra, 0.0), g(Ca, 0.0);
  for (int a = 0; a < Ra; ++a) la[a] = std::log(mu.mass[rows[a]]);
  for (int b = 0; b < Ca; ++b) lb[b] = std::log(nu.mass[cols[b]]);
  std::vector<double> cc(static_cast<std::size_t>(Ra) * Ca);
  for (int a = 0; a < Ra; ++a)
    for (int b = 0; b < Ca; ++b) cc[static_cast<std::size_t>(a) * Ca + b] = c(rows[a], cols[b]);

  auto lse = [](const std::vector<double>& x) {
    double m = -kInf;
    for (double y : x) m = std::max(m, y);
    if (!std::isfinite(m)) return -kInf;
    double s = 0.0;
    for (double y : x) s += std::exp(y - m);
    return m + std::log(s);
  };
  SinkhornResult res;
  std::vector<double> buf;
  auto row_error = [&]() {
    double err = 0.0;
    for (int a = 0; a < Ra; ++a) {
      double s = 0.0;
      for (int b = 0; b < Ca; ++b) {
        const double cab = cc[static_cast<std::size_t>(a) * Ca + b];
        if (std::isfinite(cab)) s += std::exp(la[a] + lb[b] + (f[a] + g[b] - cab) / eps);
      }
      err += std::abs(s - std::exp(la[a]));
    }
    return err;
  };
  int it = 0;
  for (; it < max_iter; ++it) {
    for (int a = 0; a < Ra; ++a) {
      buf.assign(Ca, -kInf);
      for (int b = 0; b < Ca; ++b) {
        const double cab = cc[static_cast<std::size_t>(a) * Ca + b];
        if (std::isfinite(cab)) buf[b] = lb[b] + (g[b] - cab) / eps;
      }
      f[a] = -eps * lse(buf);
    }
    for (int b = 0; b < Ca; ++b) {
      buf.assign(Ra, -kInf);
      for (int a = 0; a < Ra; ++a) {
        const double cab = cc[static_cast<std::size_t>(a) * Ca + b];
        if (std::isfinite(cab)) buf[a] = la[a] + (f[a] - cab) / eps;
      }
      g[b] = -eps * lse(buf);
    }
    if (it % 10 == 9 || it + 1 == max_iter) {
      res.marginal_error = row_error();
      if (res.marginal_error <= 1e-8) {
        res.converged = true;
        ++it;
        break;
      }
    }
  }
  res.iterations = it;
  res.plan.rows = R;
  res.plan.cols = C;
  double val = 0.0;
  for (int a = 0; a < Ra; ++a)
    for (int b = 0; b < Ca; ++b) {
      const double cab = cc[static_cast<std::size_t>(a) * Ca + b];
      if (!std::isfinite(cab)) continue;
      const double p = std::exp(la[a] + lb[b] + (f[a] + g[b] - cab) / eps);
      if (p > 0) {
        res.plan.entries.push_back({rows[a], cols[b], p});
        val += p * cab;
      }
    }
  res.plan.K = val;
  res.value = val;
  res.guardrail = mu.n * eps * std::log(static_cast<double>(R) * C);
  return res;
}

TransportBody duals_to_body(const DualPair& d, const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, Gauge gauge) {
  if (d.phi.size() != mu.points.size() || d.psi.size() != nu.points.size())
    throw InvalidInput("dual sizes do not match the measures");
  std::vector<double> h(d.phi.size()), r(d.psi.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    h[i] = std::exp(d.phi[i]);
    if (!std::isfinite(h[i]) || !(h[i] > 0))
      throw DegenerateBody("potential h is not finite and positive at source " + std::to_string(i));
  }
  for (std::size_t j = 0; j < r.size(); ++j) {
    r[j] = std::exp(d.psi[j]);
    if (!std::isfinite(r[j]) || !(r[j] > 0))
      throw DegenerateBody("radial function is not finite and positive at target " +
                           std::to_string(j));
  }
  TransportBody tb;
  tb.grid_quadrature = is_circle_grid(nu);
  const int n = mu.n;
  SupportFn hs;
  try {
    hs = SupportFn::polytope(mu.points, h);
  } catch (const InvalidInput& e) {
    throw DegenerateBody(std::string("potential is not an even support function: ") + e.what());
  }
  double vol = 0.0;
  if (tb.grid_quadrature) {
    // radial quadrature |B| sum sigma r^n
    for (double x : r) vol += std::pow(x, n);
    vol *= unit_ball_volume(n) / static_cast<double>(r.size());
  } else {
    try {
      vol = body_volume(hs);
    } catch (const EmptyInterior& e) {
      throw DegenerateBody(e.what());
    }
  }
  const double lambda = gauge == Gauge::unit_volume ? std::pow(vol, -1.0 / n) : 1.0 / h[0];
  for (double& x : h) x *= lambda;
  for (double& x : r) x *= lambda;
  tb.h = SupportFn::polytope(mu.points, h);
  tb.r = RadialFn::on_directions(nu.points, r);
  tb.volume = vol * std::pow(lambda, n);
  tb.gauge = gauge;
  tb.duals = d;
  const double ll = std::log(lambda);
  for (double& x : tb.duals.phi) x += ll;
  for (double& x : tb.duals.psi) x += ll;
  tb.duals.gauge = gauge;
  return tb;
}

std::vector<double> TransportBody::h_at_sources() const {
  std::vector<double> v(duals.phi.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(duals.phi[i]);
  return v;
}

std::vector<double> TransportBody::r_at_targets() const {
  std::vector<double> v(duals.psi.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::exp(duals.psi[j]);
  return v;
}

std::vector<double> transport_angles(const SupportFn& h) {
  d2h(h);
  const auto hv = h.values();
  const auto hp = d1_central(hv, h.grid().step());
  std::vector<double> t(hv.size());
  for (std::size_t i = 0; i < hv.size(); ++i) t[i] = h.grid().angle(static_cast<int>(i)) + std::atan(hp[i] / hv[i]);
  return t;
}

UnitVector transport_map(const SupportFn& h, int node) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("transport map needs the smooth regime");
  if (node < 0 || node >= h.size()) throw InvalidInput("node out of range");
  const auto t = transport_angles(h);
  return UnitVector::angle(t[node]);
}

namespace {
double interp_periodic(const std::vector<double>& f, double theta) {
  const int M = static_cast<int>(f.size());
  const double step = 2.0 * kPi / M;
  double x = theta / step;
  x -= M * std::floor(x / M);
  int i0 = static_cast<int>(std::floor(x));
  const double fr = x - i0;
  i0 %= M;
  return (1.0 - fr) * f[i0] + fr * f[(i0 + 1) % M];
}
}  // namespace

double ma_residual(const SupportFn& h, const GridDensity& rho_mu, const GridDensity& rho_nu) {
  if (h.regime() != Regime::smooth_circle) throw InvalidInput("ma_residual needs the smooth regime");
  const auto d = d2h(h);
  const auto hv = h.values();
  const auto hp = d1_central(hv, h.grid().step());
  if (rho_mu.size() != h.size() || rho_nu.size() != h.size())
    throw InvalidInput("densities must live on the body grid");
  double res = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    const double T = h.grid().angle(i) + std::atan(hp[i] / hv[i]);
    const double rhs = interp_periodic(rho_nu.rho, T) * hv[i] * d[i] / (hv[i] * hv[i] + hp[i] * hp[i]);
    res = std::max(res, std::abs(rho_mu.rho[i] - rhs));
  }
  return res;
}

double VariationField::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * reference[i];
  return s;
}

VariationField make_variation(std::vector<double> values, std::vector<double> reference,
                              const std::vector<int>& antipode) {
  if (values.size() != reference.size()) throw InvalidInput("variation and reference differ in length");
  if (!antipode.empty()) {
    double scale = 0.0;
    for (double x : values) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < values.size(); ++i)
      if (antipode[i] < 0 || std::abs(values[antipode[i]] - values[i]) > 1e-12 * scale)
        throw InvalidInput("variation field is not even");
  }
  double m = 0.0, w = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    m += values[i] * reference[i];
    w += reference[i];
  }
  if (!(w > 0)) throw InvalidInput("reference measure has no mass");
  for (double& x : values) x -= m / w;
  VariationField f{std::move(values), std::move(reference), true};
  return f;
}

double variation_source(const DualPair& d, const VariationField& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i)
    if (v.reference[i] > 0) s -= d.phi[i] * v.values[i] * v.reference[i];
  return s;
}

double variation_target(const DualPair& d, const VariationField& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.values.size(); ++j)
    if (w.reference[j] > 0) s += d.psi[j] * w.values[j] * w.reference[j];
  return s;
}

}  // namespace slok
