#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "thincascade/errors.hpp"
#include "thincascade/mesh.hpp"

namespace thincascade {

namespace {

double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

double incircle(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

Point circumcenter(Point a, Point b, Point c) {
  const Point ba = b - a, ca = c - a;
  const double d = 2.0 * cross(ba, ca);
  const double b2 = dot(ba, ba), c2 = dot(ca, ca);
  return {a.x + (ca.y * b2 - ba.y * c2) / d, a.y + (ba.x * c2 - ca.x * b2) / d};
}

bool in_diametral_circle(Point a, Point b, Point p) {
  // Strictly inside the circle with diameter ab: angle apb obtuse.
  return dot(a - p, b - p) < -1e-12 * dot(b - a, b - a);
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

struct Tri {
  std::array<int, 3> v;
  std::array<int, 3> nb;  // nb[k] lies across the edge opposite v[k]
  bool alive;
};

struct Segment {
  int a, b;
  BoundaryTag tag;
};

class Triangulation {
public:
  std::vector<Point> pts;
  std::vector<Tri> tris;
  int last = 0;

  explicit Triangulation(Point lo, Point hi) {
    const double w = std::max(hi.x - lo.x, hi.y - lo.y);
    const Point c = 0.5 * (lo + hi);
    pts.push_back({c.x - 50 * w, c.y - 50 * w});
    pts.push_back({c.x + 50 * w, c.y - 50 * w});
    pts.push_back({c.x, c.y + 50 * w});
    tris.push_back({{0, 1, 2}, {-1, -1, -1}, true});
  }

  int locate(Point p) const {
    int t = last;
    if (!tris[t].alive) t = first_alive();
    for (std::size_t steps = 0; steps < 4 * tris.size() + 16; ++steps) {
      const auto& T = tris[t];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        if (orient(pts[T.v[(k + 1) % 3]], pts[T.v[(k + 2) % 3]], p) < 0 && T.nb[k] >= 0) {
          next = T.nb[k];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
    for (std::size_t s = 0; s < tris.size(); ++s) {
      if (!tris[s].alive) continue;
      const auto& T = tris[s];
      if (orient(pts[T.v[0]], pts[T.v[1]], p) >= 0 && orient(pts[T.v[1]], pts[T.v[2]], p) >= 0 &&
          orient(pts[T.v[2]], pts[T.v[0]], p) >= 0)
        return static_cast<int>(s);
    }
    throw MeshingError("delaunay: point location failed");
  }

  int first_alive() const {
    for (std::size_t s = tris.size(); s-- > 0;)
      if (tris[s].alive) return static_cast<int>(s);
    throw MeshingError("delaunay: empty triangulation");
  }

  // Returns the new vertex index, or an existing one if p coincides with it.
  int insert(Point p, double merge_tol) {
    const int t0 = locate(p);
    for (int v : tris[t0].v)
      if (std::hypot(pts[v].x - p.x, pts[v].y - p.y) <= merge_tol) return v;
    const int id = static_cast<int>(pts.size());
    pts.push_back(p);

    std::vector<int> cavity{t0};
    std::vector<char> mark(tris.size(), 0);
    mark[t0] = 1;
    for (std::size_t q = 0; q < cavity.size(); ++q) {
      const auto& T = tris[cavity[q]];
      for (int k = 0; k < 3; ++k) {
        const int n = T.nb[k];
        if (n < 0 || mark[n]) continue;
        const auto& N = tris[n];
        if (incircle(pts[N.v[0]], pts[N.v[1]], pts[N.v[2]], p) > 0) {
          mark[n] = 1;
          cavity.push_back(n);
        }
      }
    }

    struct Rim {
      int a, b, outer;
    };
    std::vector<Rim> rim;
    for (int c : cavity) {
      const auto& T = tris[c];
      for (int k = 0; k < 3; ++k) {
        const int n = T.nb[k];
        if (n >= 0 && mark[n]) continue;
        rim.push_back({T.v[(k + 1) % 3], T.v[(k + 2) % 3], n});
      }
    }
    for (int c : cavity) tris[c].alive = false;

    std::unordered_map<int, int> starts, ends;
    std::vector<int> created;
    std::size_t reuse = 0;
    for (const auto& r : rim) {
      Tri T{{r.a, r.b, id}, {-1, -1, r.outer}, true};
      int slot;
      if (reuse < cavity.size()) {
        slot = cavity[reuse++];
        tris[slot] = T;
      } else {
        slot = static_cast<int>(tris.size());
        tris.push_back(T);
      }
      created.push_back(slot);
      starts[r.a] = slot;
      ends[r.b] = slot;
      if (r.outer >= 0) {
        auto& O = tris[r.outer];
        for (int k = 0; k < 3; ++k) {
          const int oa = O.v[(k + 1) % 3], ob = O.v[(k + 2) % 3];
          if (oa == r.b && ob == r.a) O.nb[k] = slot;
        }
      }
    }
    for (int s : created) {
      auto& T = tris[s];
      T.nb[0] = starts.at(T.v[1]);
      T.nb[1] = ends.at(T.v[0]);
    }
    last = created.front();
    return id;
  }

  std::unordered_map<std::uint64_t, std::pair<int, int>> edge_map() const {
    std::unordered_map<std::uint64_t, std::pair<int, int>> m;
    m.reserve(3 * tris.size());
    for (std::size_t s = 0; s < tris.size(); ++s) {
      if (!tris[s].alive) continue;
      for (int k = 0; k < 3; ++k) {
        const auto& T = tris[s];
        m.emplace(edge_key(T.v[(k + 1) % 3], T.v[(k + 2) % 3]), std::pair<int, int>{static_cast<int>(s), k});
      }
    }
    return m;
  }
};

}  // namespace

Mesh delaunay_triangulate(const TaggedPolygon& outline, double target_h, double min_angle_deg) {
  if (!(target_h > 0.0)) throw ParameterError("target_h must be positive");
  outline.validate();
  Point lo = outline.vertices[0], hi = lo;
  for (const auto& p : outline.vertices) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double scale = std::max(hi.x - lo.x, hi.y - lo.y);
  const double merge_tol = 1e-12 * scale;
  Triangulation tr(lo, hi);

  std::vector<int> corner(outline.size());
  for (std::size_t i = 0; i < outline.size(); ++i) corner[i] = tr.insert(outline.vertices[i], merge_tol);

  std::vector<Segment> segs;
  for (std::size_t i = 0; i < outline.size(); ++i) {
    const int a = corner[i], b = corner[(i + 1) % outline.size()];
    const Point pa = tr.pts[a], pb = tr.pts[b];
    const int m = std::max(1, static_cast<int>(std::ceil(std::hypot(pb.x - pa.x, pb.y - pa.y) / target_h - 1e-9)));
    int prev = a;
    for (int j = 1; j < m; ++j) {
      const double t = static_cast<double>(j) / m;
      const int v = tr.insert((1.0 - t) * pa + t * pb, merge_tol);
      segs.push_back({prev, v, outline.tags[i]});
      prev = v;
    }
    segs.push_back({prev, b, outline.tags[i]});
  }

  const std::size_t max_vertices = 4'000'000;
  auto split = [&](std::size_t s) {
    const Segment g = segs[s];
    const int m = tr.insert(0.5 * (tr.pts[g.a] + tr.pts[g.b]), 0.0);
    segs[s] = {g.a, m, g.tag};
    segs.push_back({m, g.b, g.tag});
  };

  auto conform = [&]() {
    for (;;) {
      const auto edges = tr.edge_map();
      std::vector<std::size_t> bad;
      for (std::size_t s = 0; s < segs.size(); ++s) {
        const auto it = edges.find(edge_key(segs[s].a, segs[s].b));
        if (it == edges.end()) {
          bad.push_back(s);
          continue;
        }
        const Point a = tr.pts[segs[s].a], b = tr.pts[segs[s].b];
        const auto& T = tr.tris[it->second.first];
        const int k = it->second.second;
        bool enc = in_diametral_circle(a, b, tr.pts[T.v[k]]);
        const int n = T.nb[k];
        if (!enc && n >= 0) {
          for (int v : tr.tris[n].v)
            if (v != segs[s].a && v != segs[s].b && in_diametral_circle(a, b, tr.pts[v])) enc = true;
        }
        if (enc) bad.push_back(s);
      }
      if (bad.empty()) return;
      for (std::size_t s : bad) split(s);
      if (tr.pts.size() > max_vertices) throw MeshingError("delaunay: vertex budget exhausted while conforming");
    }
  };

  conform();
  const double sin_bound = std::sin(min_angle_deg * std::numbers::pi / 180.0);
  for (int pass = 0;; ++pass) {
    if (pass > 200) throw MeshingError("delaunay: quality refinement did not converge");
    std::vector<int> bad;
    for (std::size_t s = 0; s < tr.tris.size(); ++s) {
      const auto& T = tr.tris[s];
      if (!T.alive) continue;
      const Point a = tr.pts[T.v[0]], b = tr.pts[T.v[1]], c = tr.pts[T.v[2]];
      if (!outline.contains((1.0 / 3.0) * (a + b + c))) continue;
      const double la = std::hypot(b.x - c.x, b.y - c.y);
      const double lb = std::hypot(a.x - c.x, a.y - c.y);
      const double lc = std::hypot(a.x - b.x, a.y - b.y);
      const double area2 = std::abs(orient(a, b, c));
      // Smallest angle is opposite the shortest edge: sin = area2 / (product of other two).
      const double lmin = std::min({la, lb, lc});
      const double lmax = std::max({la, lb, lc});
      const double lmid = la + lb + lc - lmin - lmax;
      const double smin = area2 / (lmid * lmax);
      if (smin < sin_bound || lmax > target_h) bad.push_back(static_cast<int>(s));
    }
    if (bad.empty()) break;
    for (int s : bad) {
      const auto& T = tr.tris[s];
      if (!T.alive) continue;
      const Point a = tr.pts[T.v[0]], b = tr.pts[T.v[1]], c = tr.pts[T.v[2]];
      if (!outline.contains((1.0 / 3.0) * (a + b + c))) continue;
      const Point cc = circumcenter(a, b, c);
      std::vector<std::size_t> enc;
      for (std::size_t g = 0; g < segs.size(); ++g)
        if (in_diametral_circle(tr.pts[segs[g].a], tr.pts[segs[g].b], cc)) enc.push_back(g);
      if (!enc.empty()) {
        for (std::size_t g : enc) split(g);
      } else if (outline.contains(cc)) {
        tr.insert(cc, merge_tol);
      } else {
        tr.insert((1.0 / 3.0) * (a + b + c), merge_tol);
      }
      if (tr.pts.size() > max_vertices) throw MeshingError("delaunay: vertex budget exhausted");
    }
    conform();
  }

  Mesh mesh;
  mesh.target_h = target_h;
  std::vector<int> remap(tr.pts.size(), -1);
  auto map_vertex = [&](int v) {
    if (remap[v] < 0) {
      remap[v] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(tr.pts[v]);
    }
    return remap[v];
  };
  // Keep the polygon corners first so their indices are predictable.
  for (int v : corner) map_vertex(v);
  for (const auto& T : tr.tris) {
    if (!T.alive) continue;
    const Point a = tr.pts[T.v[0]], b = tr.pts[T.v[1]], c = tr.pts[T.v[2]];
    if (!outline.contains((1.0 / 3.0) * (a + b + c))) continue;
    mesh.triangles.push_back({map_vertex(T.v[0]), map_vertex(T.v[1]), map_vertex(T.v[2])});
  }
  for (const auto& g : segs) {
    if (remap[g.a] < 0 || remap[g.b] < 0) throw MeshingError("delaunay: boundary segment lost");
    mesh.boundary_edges.push_back({{remap[g.a], remap[g.b]}, g.tag});
  }
  check_mesh(mesh);
  return mesh;
}

}  // namespace thincascade
