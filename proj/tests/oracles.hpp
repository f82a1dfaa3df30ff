#pragma once

// independent reference computations shared by the unit and acceptance tests

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

// exhaustive search over bases of the transportation LP restricted to finite-cost cells;
// each basis is a spanning forest of the allowed bipartite graph, flows come from leaf peeling.
// returns +inf when no basis is feasible
struct EnumerationResult {
  double value = kInf;
  long bases = 0;
  long feasible = 0;
};

inline EnumerationResult enumerate_bases(const std::vector<double>& a, const std::vector<double>& b,
                                         const std::vector<std::vector<double>>& c) {
  const int R = static_cast<int>(a.size()), C = static_cast<int>(b.size());
  std::vector<std::array<int, 2>> cells;
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j)
      if (std::isfinite(c[i][j])) cells.push_back({i, j});
  Dsu comp(R + C);
  for (auto [i, j] : cells) comp.unite(i, R + j);
  int comps = 0;
  for (int v = 0; v < R + C; ++v) comps += comp.find(v) == v;
  const int k = R + C - comps;
  EnumerationResult out;
  const int E = static_cast<int>(cells.size());
  if (k > E) return out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> supply(R + C);
  while (true) {
    Dsu d(R + C);
    bool forest = true;
    for (int t : idx)
      if (!d.unite(cells[t][0], R + cells[t][1])) {
        forest = false;
        break;
      }
    if (forest) {
      ++out.bases;
      for (int i = 0; i < R; ++i) supply[i] = a[i];
      for (int j = 0; j < C; ++j) supply[R + j] = b[j];
      std::vector<int> deg(R + C, 0);
      std::vector<bool> used(k, false);
      for (int t : idx) {
        ++deg[cells[t][0]];
        ++deg[R + cells[t][1]];
      }
      double value = 0.0;
      bool ok = true;
      for (int done = 0; done < k && ok;) {
        bool progress = false;
        for (int s = 0; s < k; ++s) {
          if (used[s]) continue;
          const int u = cells[idx[s]][0], v = R + cells[idx[s]][1];
          int leaf = -1, other = -1;
          if (deg[u] == 1) leaf = u, other = v;
          else if (deg[v] == 1) leaf = v, other = u;
          if (leaf < 0) continue;
          const double f = supply[leaf];
          if (f < -1e-13) ok = false;
          supply[leaf] = 0.0;
          supply[other] -= f;
          --deg[u];
          --deg[v];
          used[s] = true;
          ++done;
          progress = true;
          if (f > 0) value += f * c[cells[idx[s]][0]][cells[idx[s]][1]];
        }
        if (!progress) ok = false;
      }
      for (double s : supply)
        if (std::abs(s) > 1e-12) ok = false;
      if (ok) {
        ++out.feasible;
        out.value = std::min(out.value, value);
      }
    }
    int p = k - 1;
    while (p >= 0 && idx[p] == E - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

// polygon {z : <u_i, z> <= h_i}, normals given by angle, all constraints active
inline std::vector<std::array<double, 2>> polygon(std::vector<std::pair<double, double>> angle_h) {
  std::sort(angle_h.begin(), angle_h.end());
  std::vector<std::array<double, 2>> v;
  const int m = static_cast<int>(angle_h.size());
  for (int i = 0; i < m; ++i) {
    const auto [t1, h1] = angle_h[i];
    const auto [t2, h2] = angle_h[(i + 1) % m];
    const double a = std::cos(t1), b = std::sin(t1), c = std::cos(t2), d = std::sin(t2);
    const double det = a * d - b * c;
    v.push_back({(h1 * d - b * h2) / det, (a * h2 - h1 * c) / det});
  }
  return v;
}

inline double shoelace(const std::vector<std::array<double, 2>>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(s);
}

// analytic even Fourier support function h = 1 + sum a_k cos(2 k t)
struct Trig {
  std::vector<int> k;
  std::vector<double> a;
  double h(double t) const {
    double s = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) s += a[i] * std::cos(2 * k[i] * t);
    return s;
  }
  double dh(double t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) s -= 2 * k[i] * a[i] * std::sin(2 * k[i] * t);
    return s;
  }
  double hpp(double t) const {  // h + h''
    double s = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) s += (1.0 - 4.0 * k[i] * k[i]) * a[i] * std::cos(2 * k[i] * t);
    return s;
  }
  // area = (1/2) int h (h + h'') dt = pi (1 + sum a_k^2 (1 - 4k^2)/2)
  double area() const {
    double s = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) s += 0.5 * a[i] * a[i] * (1.0 - 4.0 * k[i] * k[i]);
    return kPi * s;
  }
};

// boundary integral of <x, n>^2 over the rectangle [-1,1] x [-R,R]
inline double rectangle_lhs(double R) { return 2 * (2 * R) * 1.0 + 2 * (2.0) * R * R; }
inline double rectangle_rhs(double R) { return 2.0 / std::sqrt(kPi) * std::pow(4.0 * R, 1.5); }

}  // namespace oracle
