#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slok/body.hpp"
#include "slok/config.hpp"
#include "slok/errors.hpp"

namespace slok {

namespace {

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

// 2d: polar points u/h, convex hull, hull edges give vertices
Body polygon_body(const SupportFn& h) {
  const int m = h.size();
  struct P {
    double x, y;
    int id;
  };
  std::vector<P> pts(m);
  for (int i = 0; i < m; ++i) {
    const auto& u = h.direction(i);
    pts[i] = {u[0] / h.value(i), u[1] / h.value(i), i};
  }
  std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) {
    return a.x < b.x || (a.x == b.x && (a.y < b.y || (a.y == b.y && a.id < b.id)));
  });
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, std::hypot(p.x, p.y));
  const double eps = 1e-13 * scale * scale;
  auto turn = [](const P& o, const P& a, const P& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  // monotone chain, collinear points dropped
  std::vector<P> hull(2 * m + 1);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  for (int i = m - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(std::max(0, k - 1));
  const int H = static_cast<int>(hull.size());
  if (H < 3) throw EmptyInterior("normals do not bound a polygon");

  Body b;
  b.support = h;
  // vertex e lies between facets hull[e] and hull[e+1]
  b.vertices.resize(H);
  for (int e = 0; e < H; ++e) {
    const int i = hull[e].id, j = hull[(e + 1) % H].id;
    const auto& u = h.direction(i);
    const auto& v = h.direction(j);
    const double det = u[0] * v[1] - u[1] * v[0];
    if (std::abs(det) < 1e-300) throw EmptyInterior("parallel adjacent facets");
    const double hi = h.value(i), hj = h.value(j);
    b.vertices[e] = {(hi * v[1] - hj * u[1]) / det, (u[0] * hj - v[0] * hi) / det, 0.0};
  }
  std::vector<char> active(m, 0);
  for (int e = 0; e < H; ++e) {
    Facet f;
    f.direction = hull[e].id;
    f.normal = h.direction(f.direction);
    f.h = h.value(f.direction);
    f.vertex_ids = {(e + H - 1) % H, e};
    const auto& p = b.vertices[f.vertex_ids[0]];
    const auto& q = b.vertices[f.vertex_ids[1]];
    f.area = std::hypot(q[0] - p[0], q[1] - p[1]);
    active[f.direction] = 1;
    b.facets.push_back(f);
  }
  double vol = 0.0;
  for (const auto& f : b.facets) vol += f.h * f.area;
  b.volume = 0.5 * vol;
  if (!(b.volume > 0)) throw EmptyInterior("polygon has no interior");
  for (int i = 0; i < m; ++i)
    if (!active[i]) b.inactive.push_back(i);
  std::sort(b.facets.begin(), b.facets.end(),
            [](const Facet& x, const Facet& y) { return x.direction < y.direction; });
  return b;
}

// 3d: vertex enumeration over constraint triples
Body polyhedron_body(const SupportFn& h) {
  const int m = h.size();
  std::vector<Vec3> u(m);
  std::vector<double> hv(m);
  double hmax = 0.0;
  for (int i = 0; i < m; ++i) {
    u[i] = h.direction(i).c;
    hv[i] = h.value(i);
    hmax = std::max(hmax, hv[i]);
  }
  const double ptol = 1e-10 * hmax;
  std::vector<Vec3> verts;
  for (int a = 0; a < m; ++a)
    for (int bb = a + 1; bb < m; ++bb) {
      const Vec3 cab = cross(u[a], u[bb]);
      if (norm3(cab) < 1e-12) continue;
      for (int c = bb + 1; c < m; ++c) {
        const double det = dot3(u[c], cab);
        if (std::abs(det) < 1e-10) continue;
        // Cramer with the cross products of the rows
        const Vec3 cbc = cross(u[bb], u[c]);
        const Vec3 cca = cross(u[c], u[a]);
        Vec3 x;
        for (int t = 0; t < 3; ++t) x[t] = (hv[a] * cbc[t] + hv[bb] * cca[t] + hv[c] * cab[t]) / det;
        bool ok = true;
        for (int t = 0; t < m && ok; ++t)
          if (dot3(u[t], x) > hv[t] + ptol) ok = false;
        if (!ok) continue;
        bool dup = false;
        for (const auto& v : verts)
          if (norm3(sub(v, x)) <= 1e-9 * hmax) {
            dup = true;
            break;
          }
        if (!dup) verts.push_back(x);
      }
    }
  if (verts.size() < 4) throw EmptyInterior("normals do not bound a polyhedron");

  Body b;
  b.support = h;
  b.vertices = verts;
  for (int j = 0; j < m; ++j) {
    std::vector<int> ids;
    for (int v = 0; v < static_cast<int>(verts.size()); ++v)
      if (std::abs(dot3(u[j], verts[v]) - hv[j]) <= 1e-9 * hmax) ids.push_back(v);
    if (ids.size() < 3) {
      b.inactive.push_back(j);
      continue;
    }
    Vec3 cen{0, 0, 0};
    for (int v : ids)
      for (int t = 0; t < 3; ++t) cen[t] += verts[v][t] / ids.size();
    // in-plane basis
    Vec3 e1 = std::abs(u[j][0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = cross(u[j], e1);
    const double n1 = norm3(e1);
    for (double& x : e1) x /= n1;
    const Vec3 e2 = cross(u[j], e1);
    std::vector<std::pair<double, int>> ang;
    for (int v : ids) {
      const Vec3 d = sub(verts[v], cen);
      ang.push_back({std::atan2(dot3(d, e2), dot3(d, e1)), v});
    }
    std::sort(ang.begin(), ang.end());
    Facet f;
    f.direction = j;
    f.normal = h.direction(j);
    f.h = hv[j];
    for (const auto& a : ang) f.vertex_ids.push_back(a.second);
    Vec3 acc{0, 0, 0};
    const int k = static_cast<int>(f.vertex_ids.size());
    for (int t = 0; t < k; ++t) {
      const Vec3 c = cross(verts[f.vertex_ids[t]], verts[f.vertex_ids[(t + 1) % k]]);
      for (int s = 0; s < 3; ++s) acc[s] += c[s];
    }
    f.area = 0.5 * std::abs(dot3(acc, u[j]));
    if (f.area <= 0) {
      b.inactive.push_back(j);
      continue;
    }
    b.facets.push_back(f);
  }
  double vol = 0.0;
  for (const auto& f : b.facets) vol += f.h * f.area;
  b.volume = vol / 3.0;
  if (!(b.volume > 0)) throw EmptyInterior("polyhedron has no interior");
  return b;
}

}  // namespace

Body make_polytope_body(const SupportFn& h) {
  if (h.dim() == 2) return polygon_body(h);
  if (h.dim() == 3) return polyhedron_body(h);
  throw InvalidInput("polytopes are supported for n = 2, 3");
}

}  // namespace slok
