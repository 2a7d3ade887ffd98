#include "delaunay.hpp"

#include <algorithm>
#include <unordered_set>

namespace atgm {

namespace {

constexpr int kGhost = -1;

struct Tri {
  int v[3];
};

double orient(const Matrix& c, int a, int b, const double* p) {
  double abx = c(b, 0) - c(a, 0);
  double aby = c(b, 1) - c(a, 1);
  double apx = p[0] - c(a, 0);
  double apy = p[1] - c(a, 1);
  return abx * apy - aby * apx;
}

// > 0 iff p is strictly inside the circumcircle of ccw triangle (a, b, c).
double incircle(const Matrix& c, int a, int b, int d, const double* p) {
  double ax = c(a, 0) - p[0], ay = c(a, 1) - p[1];
  double bx = c(b, 0) - p[0], by = c(b, 1) - p[1];
  double cx = c(d, 0) - p[0], cy = c(d, 1) - p[1];
  return (ax * ax + ay * ay) * (bx * cy - by * cx) -
         (bx * bx + by * by) * (ax * cy - ay * cx) +
         (cx * cx + cy * cy) * (ax * by - ay * bx);
}

// Ghost triangle (x, y, kGhost) owns the half-plane strictly left of x->y;
// its "circumcircle" is the line through x and y. A point exactly on that
// line counts as inside only when it splits the hull edge (strictly between
// the endpoints) -- beyond the segment it is on the degenerate circle and the
// strict test leaves it outside.
bool ghost_contains(const Matrix& c, int x, int y, const double* p) {
  double o = orient(c, x, y, p);
  if (o > 0.0) return true;
  if (o < 0.0) return false;
  double ex = c(y, 0) - c(x, 0);
  double ey = c(y, 1) - c(x, 1);
  double t = (p[0] - c(x, 0)) * ex + (p[1] - c(x, 1)) * ey;
  return t > 0.0 && t < ex * ex + ey * ey;
}

bool tri_contains(const Matrix& c, const Tri& t, const double* p) {
  if (t.v[2] == kGhost) return ghost_contains(c, t.v[0], t.v[1], p);
  return incircle(c, t.v[0], t.v[1], t.v[2], p) > 0.0;
}

// Rotate so a ghost vertex, if any, sits last; cyclic order is preserved.
Tri normalize(int a, int b, int d) {
  if (a == kGhost) return Tri{{b, d, a}};
  if (b == kGhost) return Tri{{d, a, b}};
  return Tri{{a, b, d}};
}

int64_t edge_key(int a, int b) {
  return ((static_cast<int64_t>(a) + 2) << 32) | static_cast<uint32_t>(b + 2);
}

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangles(const PointSet& ps) {
  check_points(ps, "delaunay_triangles");
  require(ps.dim() == 2, errc::unsupported_dimension, "delaunay_triangles: points must be 2-d");
  int m = ps.count();
  require(m >= 3, errc::invalid_argument, "delaunay_triangles: need at least 3 points");
  const Matrix& c = ps.coords;

  // Seed triangle: earliest non-collinear index triple.
  int i1 = -1;
  for (int i = 1; i < m && i1 < 0; ++i) {
    if (c(i, 0) != c(0, 0) || c(i, 1) != c(0, 1)) i1 = i;
  }
  require(i1 >= 0, errc::degenerate_input, "delaunay_triangles: all points coincide");
  int i2 = -1;
  double o2 = 0.0;
  for (int i = i1 + 1; i < m && i2 < 0; ++i) {
    double p[2] = {c(i, 0), c(i, 1)};
    double o = orient(c, 0, i1, p);
    if (o != 0.0) {
      i2 = i;
      o2 = o;
    }
  }
  require(i2 >= 0, errc::degenerate_input, "delaunay_triangles: points are collinear");

  int a = 0, b = i1;
  if (o2 < 0.0) std::swap(a, b);
  std::vector<Tri> tris = {
      Tri{{a, b, i2}},
      Tri{{b, a, kGhost}},
      Tri{{i2, b, kGhost}},
      Tri{{a, i2, kGhost}},
  };

  std::vector<char> bad;
  std::unordered_set<int64_t> bad_edges;
  for (int p_idx = 1; p_idx < m; ++p_idx) {
    if (p_idx == i1 || p_idx == i2) continue;
    double p[2] = {c(p_idx, 0), c(p_idx, 1)};

    bad.assign(tris.size(), 0);
    bad_edges.clear();
    bool any = false;
    for (size_t t = 0; t < tris.size(); ++t) {
      if (!tri_contains(c, tris[t], p)) continue;
      bad[t] = 1;
      any = true;
      for (int e = 0; e < 3; ++e) {
        bad_edges.insert(edge_key(tris[t].v[e], tris[t].v[(e + 1) % 3]));
      }
    }
    require(any, errc::degenerate_input, "delaunay_triangles: duplicate point");

    std::vector<Tri> next;
    next.reserve(tris.size() + 2);
    for (size_t t = 0; t < tris.size(); ++t) {
      if (!bad[t]) next.push_back(tris[t]);
    }
    // Cavity boundary: directed edges of removed triangles whose reverse
    // survives. Each keeps the cavity on its left, so appending the new
    // vertex preserves orientation.
    for (size_t t = 0; t < tris.size(); ++t) {
      if (!bad[t]) continue;
      for (int e = 0; e < 3; ++e) {
        int u = tris[t].v[e];
        int v = tris[t].v[(e + 1) % 3];
        if (bad_edges.count(edge_key(v, u))) continue;
        next.push_back(normalize(u, v, p_idx));
      }
    }
    tris.swap(next);
  }

  std::vector<std::array<int, 3>> out;
  for (const Tri& t : tris) {
    if (t.v[2] == kGhost) continue;
    int r = 0;
    if (t.v[1] < t.v[r]) r = 1;
    if (t.v[2] < t.v[r]) r = 2;
    out.push_back({t.v[r], t.v[(r + 1) % 3], t.v[(r + 2) % 3]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet delaunay_edges(const PointSet& ps) {
  auto tris = delaunay_triangles(ps);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(tris.size() * 3);
  for (const auto& t : tris) {
    for (int e = 0; e < 3; ++e) {
      int u = t[e], v = t[(e + 1) % 3];
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  EdgeSet es;
  es.node_count = ps.count();
  es.edges = std::move(edges);
  return es;
}

}  // namespace atgm
