#include "slok/logmink.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>

#include "slok/config.hpp"
#include "slok/errors.hpp"
#include "slok/functionals.hpp"
#include "slok/random.hpp"

namespace slok {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// f -> F^{-1}[ F[f](m) * sym(m) ], real periodic f, m the signed wavenumber magnitude
std::vector<double> apply_symbol(const std::vector<double>& f, const std::function<double(int)>& sym) {
  const int M = static_cast<int>(f.size());
  std::vector<double> c(M), s(M);
  for (int j = 0; j < M; ++j) {
    c[j] = std::cos(2.0 * kPi * j / M);
    s[j] = std::sin(2.0 * kPi * j / M);
  }
  std::vector<double> re(M, 0.0), im(M, 0.0);
  for (int m = 0; m < M; ++m) {
    long idx = 0;
    double a = 0.0, b = 0.0;
    for (int j = 0; j < M; ++j) {
      a += f[j] * c[idx];
      b -= f[j] * s[idx];
      idx += m;
      if (idx >= M) idx -= M;
    }
    const double w = sym(std::min(m, M - m));
    re[m] = a * w;
    im[m] = b * w;
  }
  std::vector<double> out(M, 0.0);
  for (int j = 0; j < M; ++j) {
    long idx = 0;
    double a = 0.0;
    for (int m = 0; m < M; ++m) {
      a += re[m] * c[idx] - im[m] * s[idx];
      idx += j;
      if (idx >= M) idx -= M;
    }
    out[j] = a / M;
  }
  return out;
}

// objective over log h per antipodal pair
struct Problem {
  virtual ~Problem() = default;
  // +inf when the point is not admissible
  virtual double value(const std::vector<double>& x, std::vector<double>* grad) const = 0;
  virtual std::vector<double> precondition(const std::vector<double>& g) const { return g; }
  virtual bool repair(std::vector<double>&) const { return false; }
};

struct SmoothProblem : Problem {
  DirectionGrid grid;
  std::vector<double> mu;  // per node
  int half = 0;

  std::vector<double> full(const std::vector<double>& x) const {
    std::vector<double> h(grid.size());
    for (int i = 0; i < grid.size(); ++i) h[i] = std::exp(x[i % half]);
    return h;
  }

  double value(const std::vector<double>& x, std::vector<double>* grad) const override {
    const auto h = full(x);
    const auto d = d2h_raw(h, grid.step());
    double hd = 0.0, f = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      if (!(d[i] > 0)) return kInf;
      hd += h[i] * d[i];
      f += mu[i] * x[i % half];
    }
    // finite-difference area (1/2) sum h D h dt, quadratic in h
    const double area = 0.5 * hd * grid.step();
    if (grad) {
      grad->assign(half, 0.0);
      for (int i = 0; i < grid.size(); ++i) (*grad)[i % half] += mu[i] - h[i] * d[i] / hd;
    }
    return f - 0.5 * std::log(area);
  }

  std::vector<double> precondition(const std::vector<double>& g) const override {
    std::vector<double> gf(grid.size());
    for (int i = 0; i < grid.size(); ++i) gf[i] = g[i % half];
    const auto p = apply_symbol(gf, [](int m) { return 1.0 / (1.0 + static_cast<double>(m) * m); });
    return {p.begin(), p.begin() + half};
  }

  bool repair(std::vector<double>& x) const override {
    const SupportFn h = SupportFn::smooth(grid, full(x));
    const SupportFn r = repair_admissible(h);
    for (int k = 0; k < half; ++k) x[k] = std::log(r.half_values()[k]);
    return true;
  }
};

struct PolytopeProblem : Problem {
  SupportFn shape;              // normals
  std::vector<double> mu_pair;  // mass per pair

  double value(const std::vector<double>& x, std::vector<double>* grad) const override {
    std::vector<double> half(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) half[k] = std::exp(x[k]);
    Body b;
    try {
      b = make_body(shape.with_half_values(half));
    } catch (const Error&) {
      return kInf;
    }
    const int n = shape.dim();
    if (grad) {
      grad->assign(x.size(), 0.0);
      for (std::size_t k = 0; k < x.size(); ++k) (*grad)[k] = mu_pair[k];
      for (const auto& f : b.facets)
        (*grad)[shape.pair_of(f.direction)] -= f.h * f.area / (n * b.volume);
    }
    return dotv(mu_pair, x) - std::log(b.volume) / n;
  }
};

struct RunResult {
  std::vector<double> x;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
  double gnorm = 0.0;
};

double norm1(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s += std::abs(v);
  return s;
}

// preconditioned L-BFGS with Armijo backtracking
RunResult descend(const Problem& p, std::vector<double> x, const MinimizeOptions& opt) {
  RunResult out;
  std::vector<double> g;
  double f = p.value(x, &g);
  if (!std::isfinite(f)) {
    if (!p.repair(x)) throw NonConvex("initial support function is not admissible");
    f = p.value(x, &g);
    if (!std::isfinite(f)) throw NonConvex("initial support function could not be repaired");
  }
  out.trace.push_back(f);
  std::deque<std::vector<double>> S, Y;
  const std::size_t N = x.size();
  for (int it = 0; it < opt.max_iter; ++it) {
    out.gnorm = norm1(g);
    if (out.gnorm <= opt.tol) {
      out.converged = true;
      break;
    }
    // two-loop recursion
    std::vector<double> q = g;
    std::vector<double> alpha(S.size());
    for (int k = static_cast<int>(S.size()) - 1; k >= 0; --k) {
      alpha[k] = dotv(S[k], q) / dotv(Y[k], S[k]);
      for (std::size_t i = 0; i < N; ++i) q[i] -= alpha[k] * Y[k][i];
    }
    std::vector<double> r = p.precondition(q);
    if (!S.empty()) {
      const auto py = p.precondition(Y.back());
      const double gamma = dotv(S.back(), Y.back()) / dotv(Y.back(), py);
      for (double& v : r) v *= gamma;
    }
    for (std::size_t k = 0; k < S.size(); ++k) {
      const double beta = dotv(Y[k], r) / dotv(Y[k], S[k]);
      for (std::size_t i = 0; i < N; ++i) r[i] += S[k][i] * (alpha[k] - beta);
    }
    double slope = -dotv(g, r);
    if (!(slope < 0)) {
      S.clear();
      Y.clear();
      r = p.precondition(g);
      slope = -dotv(g, r);
    }
    double t = S.empty() ? opt.step : 1.0;
    bool accepted = false;
    std::vector<double> xn(N), gn;
    double fn = kInf;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < N; ++i) xn[i] = x[i] - t * r[i];
      fn = p.value(xn, &gn);
      if (!std::isfinite(fn) && p.repair(xn)) fn = p.value(xn, &gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      // approximate Wolfe once f differences sink into round-off
      if (std::isfinite(fn) && fn <= f + 1e-13 * std::abs(f)) {
        const double dphi = -dotv(gn, r);
        if (dphi >= 0.9 * slope && dphi <= -0.9998 * slope) {
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (S.empty()) break;  // no descent left at machine precision
      S.clear();
      Y.clear();
      continue;
    }
    std::vector<double> s(N), y(N);
    for (std::size_t i = 0; i < N; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    if (dotv(s, y) > 1e-300) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      if (static_cast<int>(S.size()) > opt.memory) {
        S.pop_front();
        Y.pop_front();
      }
    }
    x = std::move(xn);
    g = std::move(gn);
    f = fn;
    out.trace.push_back(f);
    out.iterations = it + 1;
  }
  out.gnorm = norm1(g);
  out.converged = out.converged || out.gnorm <= opt.tol;
  out.x = std::move(x);
  return out;
}

}  // namespace

SupportFn repair_admissible(const SupportFn& h, double floor) {
  if (h.regime() != Regime::smooth_circle) return h;
  auto d = d2h_raw(h.values(), h.grid().step());
  bool clipped = false;
  for (double& v : d)
    if (v < floor) {
      v = floor;
      clipped = true;
    }
  if (!clipped) return h;
  const int M = h.size();
  const double step = h.grid().step();
  // solve (I + second difference) h = d mode by mode
  auto v = apply_symbol(d, [&](int m) {
    const double s = std::sin(0.5 * m * step);
    return 1.0 / (1.0 - 4.0 * s * s / (step * step));
  });
  for (int i = 0; i < M / 2; ++i) v[i] = v[i + M / 2] = 0.5 * (v[i] + v[i + M / 2]);
  return SupportFn::smooth(h.grid(), v);
}

LogMinkResult minimize_F0(const GridDensity& mu, const SupportFn& init, const MinimizeOptions& opt) {
  if (!mu.symmetric && !is_symmetric(mu)) throw InvalidInput("log-Minkowski data must be symmetric");
  if (init.regime() != Regime::smooth_circle || init.size() != mu.size())
    throw InvalidInput("initial support function must live on the grid of mu");
  SmoothProblem p;
  p.grid = mu.grid;
  p.mu = mu.weights();
  p.half = mu.size() / 2;
  std::vector<double> x(p.half);
  for (int k = 0; k < p.half; ++k) x[k] = std::log(init.half_values()[k]);
  const RunResult run = descend(p, x, opt);

  LogMinkResult res;
  const SupportFn raw = SupportFn::smooth(mu.grid, p.full(run.x));
  res.h = raw.scaled(std::pow(body_volume(raw), -0.5));
  res.trace = run.trace;
  res.iterations = run.iterations;
  res.converged = run.converged;
  res.gradient_norm = run.gnorm;
  res.F0 = F0(res.h, mu);
  res.stationarity = stationarity_residual(res.h, mu);
  return res;
}

LogMinkResult minimize_F0(const GridDensity& mu, const MinimizeOptions& opt) {
  return minimize_F0(mu, ball_support(mu.grid), opt);
}

LogMinkResult minimize_F0(const AtomicMeasure& mu, std::optional<SupportFn> init,
                          const MinimizeOptions& opt) {
  if (!is_symmetric(mu)) throw InvalidInput("log-Minkowski data must be symmetric");
  PolytopeProblem p;
  if (init) {
    if (init->regime() != Regime::polytope) throw InvalidInput("initial body must be a polytope");
    p.shape = *init;
  } else {
    p.shape = SupportFn::polytope(mu.points, std::vector<double>(mu.points.size(), 1.0));
  }
  p.mu_pair.assign(p.shape.pair_count(), 0.0);
  for (int i = 0; i < mu.size(); ++i) {
    int hit = -1;
    for (int j = 0; j < p.shape.size() && hit < 0; ++j)
      if (angular_distance(p.shape.direction(j), mu.points[i]) <= tol::merge_angle) hit = j;
    if (hit < 0) throw InvalidInput("atom is not among the candidate normals");
    p.mu_pair[p.shape.pair_of(hit)] += mu.weights[i];
  }
  std::vector<double> x(p.shape.pair_count());
  for (int k = 0; k < p.shape.pair_count(); ++k) x[k] = std::log(p.shape.half_values()[k]);
  const RunResult run = descend(p, x, opt);

  LogMinkResult res;
  std::vector<double> half(run.x.size());
  for (std::size_t k = 0; k < half.size(); ++k) half[k] = std::exp(run.x[k]);
  const SupportFn raw = p.shape.with_half_values(half);
  res.h = raw.scaled(std::pow(body_volume(raw), -1.0 / raw.dim()));
  res.trace = run.trace;
  res.iterations = run.iterations;
  res.converged = run.converged;
  res.gradient_norm = run.gnorm;
  res.F0 = F0(res.h, discrete(mu));
  res.stationarity = stationarity_residual(res.h, discrete(mu));
  return res;
}

double stationarity_residual(const SupportFn& h, const DiscreteMeasure& mu) {
  const DiscreteMeasure c = cone_measure(h).discrete();
  std::vector<UnitVector> pts = mu.points;
  std::vector<double> diff = mu.mass;
  for (std::size_t a = 0; a < c.points.size(); ++a) {
    int hit = -1;
    if (a < pts.size() && pts[a] == c.points[a]) hit = static_cast<int>(a);
    for (std::size_t j = 0; j < pts.size() && hit < 0; ++j)
      if (pts[j] == c.points[a] || angular_distance(pts[j], c.points[a]) <= tol::merge_angle)
        hit = static_cast<int>(j);
    if (hit < 0) {
      pts.push_back(c.points[a]);
      diff.push_back(-c.mass[a]);
    } else {
      diff[hit] -= c.mass[a];
    }
  }
  double s = 0.0;
  for (double d : diff) s += std::abs(d);
  return 0.5 * s;
}

double stationarity_residual(const SupportFn& h, const GridDensity& mu) {
  return stationarity_residual(h, discrete(mu));
}

FixedPointResult fixed_point_F(const GridDensity& mu, const FixedPointOptions& opt,
                               std::optional<GridDensity> start) {
  if (!(opt.alpha > 0 && opt.alpha <= 1)) throw InvalidInput("damping must lie in (0, 1]");
  const DirectionGrid& grid = mu.grid;
  const int n = 2;
  GridDensity nu = start ? *start : uniform_density(grid);
  if (nu.size() != mu.size()) throw InvalidInput("start density lives on another grid");
  const DiscreteMeasure dm = discrete(mu);
  FixedPointResult res;
  for (int it = 0; it < opt.max_iter; ++it) {
    const DiscreteMeasure dn = discrete(nu);
    const auto sol = solve_plan(dm, dn);
    const auto tb = duals_to_body(sol.duals, dm, dn, Gauge::unit_volume);
    const double f = entropy(nu) / n - sol.plan.K;
    res.trace.push_back(f);
    const auto r = tb.r_at_targets();
    std::vector<double> next(nu.size());
    double change = 0.0;
    for (int i = 0; i < nu.size(); ++i)
      next[i] = std::pow(nu.rho[i], 1.0 - opt.alpha) * std::pow(r[i], n * opt.alpha);
    GridDensity nn = normalized_density(grid, next);
    for (int i = 0; i < nu.size(); ++i)
      change = std::max(change, std::abs(std::log(nn.rho[i]) - std::log(nu.rho[i])));
    res.iterations = it + 1;
    res.nu = nu;
    res.F = f;
    std::vector<double> hv(grid.size());
    double f0 = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      hv[i] = std::exp(tb.duals.phi[i]);
      if (dm.mass[i] > 0) f0 += dm.mass[i] * tb.duals.phi[i];
    }
    res.h = SupportFn::smooth(grid, hv);
    res.F0 = f0;
    double C = 0.0;
    for (int i = 0; i < grid.size(); ++i) C += std::pow(r[i], n) * grid.weight(i);
    std::vector<double> m(grid.size());
    for (int i = 0; i < grid.size(); ++i) m[i] = std::pow(r[i], n) / C;
    res.ent_m = relative_entropy(nu, GridDensity{grid, m, true});
    if (change <= opt.tol) {
      res.converged = true;
      break;
    }
    nu = std::move(nn);
  }
  return res;
}

FireyReport firey_uniqueness_check(int M, int starts, std::uint64_t seed) {
  FireyReport rep;
  rep.M = M;
  rep.seed = seed;
  const DirectionGrid grid = make_circle_grid(M);
  const GridDensity sigma = uniform_density(grid);
  rep.pass = true;
  for (int s = 0; s < starts; ++s) {
    Rng rng(instance_seed(seed, s));
    const SupportFn init = random_shape(rng).sample(grid);
    const auto res = minimize_F0(sigma, init);
    const auto hv = res.h.half_values();
    const double mean = std::accumulate(hv.begin(), hv.end(), 0.0) / hv.size();
    double dev = 0.0;
    for (double v : hv) dev = std::max(dev, std::abs(v - mean));
    const double verr = std::abs(body_volume(res.h) - 1.0);
    rep.deviation.push_back(dev);
    rep.volume_error.push_back(verr);
    rep.converged.push_back(res.converged);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.max_volume_error = std::max(rep.max_volume_error, verr);
    rep.pass = rep.pass && dev <= 1e-5 && verr <= 1e-8;
  }
  return rep;
}

}  // namespace slok
