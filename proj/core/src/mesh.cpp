#include "thincascade/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string>

#include "thincascade/errors.hpp"

namespace thincascade {

double Mesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  return 0.5 * cross(vertices[tri[1]] - vertices[tri[0]], vertices[tri[2]] - vertices[tri[0]]);
}

Point Mesh::centroid(std::size_t t) const {
  const auto& tri = triangles[t];
  const Point s = vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]];
  return (1.0 / 3.0) * s;
}

double Mesh::area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
  return a;
}

std::vector<int> Mesh::tagged_vertices(BoundaryTag tag) const {
  std::vector<int> out;
  for (const auto& e : boundary_edges)
    if (e.tag == tag) out.insert(out.end(), e.v.begin(), e.v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Mesh::has_tag(BoundaryTag tag) const {
  return std::any_of(boundary_edges.begin(), boundary_edges.end(),
                     [tag](const BoundaryEdge& e) { return e.tag == tag; });
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q{180.0, 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    std::array<Point, 3> p{mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
    for (int k = 0; k < 3; ++k) {
      const Point u = p[(k + 1) % 3] - p[k];
      const Point v = p[(k + 2) % 3] - p[k];
      const double ang = std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / std::numbers::pi;
      q.min_angle_deg = std::min(q.min_angle_deg, ang);
      q.max_diameter = std::max(q.max_diameter, std::hypot(u.x, u.y));
    }
    q.min_area = std::min(q.min_area, mesh.triangle_area(t));
  }
  return q;
}

void check_mesh(const Mesh& mesh, double min_angle_deg, double size_factor) {
  if (mesh.triangles.empty()) throw MeshingError("mesh has no triangles");
  const auto q = mesh_quality(mesh);
  if (!(q.min_area > 0.0)) throw MeshingError("mesh has a non-positive triangle");
  if (q.min_angle_deg < min_angle_deg)
    throw MeshingError("mesh minimum angle " + std::to_string(q.min_angle_deg) + " below " +
                       std::to_string(min_angle_deg) + " degrees");
  if (mesh.target_h > 0.0 && q.max_diameter > size_factor * mesh.target_h)
    throw MeshingError("mesh element diameter " + std::to_string(q.max_diameter) + " exceeds " +
                       std::to_string(size_factor) + " * target_h");
}

namespace {

struct Chain {
  std::vector<Point> pts;  // increasing x
  std::vector<BoundaryTag> tags;  // tag of segment pts[k]..pts[k+1]

  double y_at(double x) const {
    if (x <= pts.front().x) return pts.front().y;
    if (x >= pts.back().x) return pts.back().y;
    auto it = std::upper_bound(pts.begin(), pts.end(), x, [](double v, Point p) { return v < p.x; });
    const Point b = *it;
    const Point a = *(it - 1);
    const double t = (x - a.x) / (b.x - a.x);
    return (1.0 - t) * a.y + t * b.y;
  }

  BoundaryTag tag_at(double x) const {
    auto it = std::upper_bound(pts.begin(), pts.end(), x, [](double v, Point p) { return v < p.x; });
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - pts.begin()) - 1));
    return tags[std::min(k, tags.size() - 1)];
  }
};

double min_angle(Point a, Point b, Point c) {
  std::array<Point, 3> p{a, b, c};
  double m = 180.0;
  for (int k = 0; k < 3; ++k) {
    const Point u = p[(k + 1) % 3] - p[k];
    const Point v = p[(k + 2) % 3] - p[k];
    m = std::min(m, std::atan2(std::abs(cross(u, v)), dot(u, v)));
  }
  return m;
}

}  // namespace

Mesh mapped_triangulate(const TaggedPolygon& outline, double target_h) {
  if (!(target_h > 0.0)) throw ParameterError("target_h must be positive");
  outline.validate();
  const std::size_t n = outline.size();
  const auto& V = outline.vertices;
  double xmin = V[0].x, xmax = V[0].x;
  for (const auto& p : V) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  // Locate the single vertical end edges.
  std::ptrdiff_t left_edge = -1, right_edge = -1;
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = outline.edge(i);
    if (a.x == b.x) {
      if (a.x == xmin && b.y < a.y && left_edge < 0) left_edge = static_cast<std::ptrdiff_t>(i);
      else if (a.x == xmax && b.y > a.y && right_edge < 0) right_edge = static_cast<std::ptrdiff_t>(i);
      else throw MeshingError("mapped mesher: interior vertical edge");
    }
  }
  if (left_edge < 0 || right_edge < 0) throw MeshingError("mapped mesher: missing vertical end edges");

  Chain bottom, top;
  // Bottom chain: from end of left edge to start of right edge, counterclockwise.
  for (std::size_t i = (left_edge + 1) % n;; i = (i + 1) % n) {
    bottom.pts.push_back(V[i]);
    if (static_cast<std::ptrdiff_t>(i) == right_edge) break;
    bottom.tags.push_back(outline.tags[i]);
  }
  for (std::size_t i = (right_edge + 1) % n;; i = (i + 1) % n) {
    top.pts.push_back(V[i]);
    if (static_cast<std::ptrdiff_t>(i) == left_edge) break;
    top.tags.push_back(outline.tags[i]);
  }
  std::reverse(top.pts.begin(), top.pts.end());
  std::reverse(top.tags.begin(), top.tags.end());
  for (const Chain* c : {&bottom, &top}) {
    if (c->pts.size() < 2) throw MeshingError("mapped mesher: degenerate chain");
    for (std::size_t k = 1; k < c->pts.size(); ++k)
      if (!(c->pts[k].x > c->pts[k - 1].x)) throw MeshingError("mapped mesher: chain not monotone in x");
  }

  std::vector<double> breaks;
  for (const auto& p : bottom.pts) breaks.push_back(p.x);
  for (const auto& p : top.pts) breaks.push_back(p.x);
  std::sort(breaks.begin(), breaks.end());
  const double xtol = 1e-13 * (xmax - xmin);
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [xtol](double a, double b) { return b - a <= xtol; }),
               breaks.end());
  breaks.front() = xmin;
  breaks.back() = xmax;

  const double step = 0.7 * target_h;
  double tmax = 0.0;
  for (double x : breaks) tmax = std::max(tmax, top.y_at(x) - bottom.y_at(x));
  int ny = static_cast<int>(std::ceil(tmax / step - 1e-9));
  ny = std::max(2, ny + (ny % 2));

  // Columns narrow where the strip is thin so cells stay near isotropic.
  std::vector<double> xs{breaks.front()};
  for (std::size_t k = 1; k < breaks.size(); ++k) {
    const double len = breaks[k] - breaks[k - 1];
    const double thin = std::min(top.y_at(breaks[k - 1]) - bottom.y_at(breaks[k - 1]),
                                 top.y_at(breaks[k]) - bottom.y_at(breaks[k]));
    const double local = std::min(step, 1.2 * thin / ny);
    const int m = std::max(1, static_cast<int>(std::ceil(len / local - 1e-9)));
    for (int j = 1; j < m; ++j) xs.push_back(breaks[k - 1] + len * j / m);
    xs.push_back(breaks[k]);
  }

  const std::size_t nx = xs.size();
  std::vector<double> yb(nx), yt(nx);
  bool symmetric = true;
  for (std::size_t i = 0; i < nx; ++i) {
    yb[i] = bottom.y_at(xs[i]);
    yt[i] = top.y_at(xs[i]);
    if (!(yt[i] > yb[i])) throw MeshingError("mapped mesher: chains cross");
    if (std::abs(yb[i] + yt[i]) > 1e-13 * (yt[i] - yb[i])) symmetric = false;
  }

  Mesh mesh;
  mesh.target_h = target_h;
  auto vid = [ny](std::size_t i, int j) { return static_cast<int>(i) * (ny + 1) + j; };
  for (std::size_t i = 0; i < nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      double y = yb[i] + (yt[i] - yb[i]) * j / ny;
      if (symmetric && 2 * j == ny) y = 0.0;
      mesh.vertices.push_back({xs[i], y});
    }

  // Per cell pick the diagonal with the larger minimum angle; mirror the
  // choice for the upper half when the outline is symmetric about y = 0.
  auto choose = [&](std::size_t i, int j) {
    const Point a = mesh.vertices[vid(i, j)], b = mesh.vertices[vid(i + 1, j)];
    const Point c = mesh.vertices[vid(i + 1, j + 1)], d = mesh.vertices[vid(i, j + 1)];
    const double ac = std::min(min_angle(a, b, c), min_angle(a, c, d));
    const double bd = std::min(min_angle(a, b, d), min_angle(b, c, d));
    if (std::abs(ac - bd) <= 1e-12) return ((i + static_cast<std::size_t>(j)) % 2) == 0;
    return ac > bd;
  };
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      bool use_ac;
      if (symmetric && 2 * j >= ny) use_ac = !choose(i, ny - 1 - j);
      else use_ac = choose(i, j);
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      if (use_ac) {
        mesh.triangles.push_back({a, b, c});
        mesh.triangles.push_back({a, c, d});
      } else {
        mesh.triangles.push_back({a, b, d});
        mesh.triangles.push_back({b, c, d});
      }
    }
  }

  const BoundaryTag left_tag = outline.tags[static_cast<std::size_t>(left_edge)];
  const BoundaryTag right_tag = outline.tags[static_cast<std::size_t>(right_edge)];
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    const double xm = 0.5 * (xs[i] + xs[i + 1]);
    mesh.boundary_edges.push_back({{vid(i, 0), vid(i + 1, 0)}, bottom.tag_at(xm)});
    mesh.boundary_edges.push_back({{vid(i + 1, ny), vid(i, ny)}, top.tag_at(xm)});
  }
  for (int j = 0; j < ny; ++j) {
    mesh.boundary_edges.push_back({{vid(nx - 1, j), vid(nx - 1, j + 1)}, right_tag});
    mesh.boundary_edges.push_back({{vid(0, j + 1), vid(0, j)}, left_tag});
  }
  check_mesh(mesh);
  return mesh;
}

Mesh triangulate(const TaggedPolygon& outline, double target_h, MesherKind kind) {
  if (!(target_h > 0.0)) throw ParameterError("target_h must be positive");
  outline.validate();
  switch (kind) {
    case MesherKind::Mapped: return mapped_triangulate(outline, target_h);
    case MesherKind::Delaunay: return delaunay_triangulate(outline, target_h);
    case MesherKind::Auto: break;
  }
  try {
    return mapped_triangulate(outline, target_h);
  } catch (const MeshingError&) {
    return delaunay_triangulate(outline, target_h);
  }
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.target_h = 0.5 * mesh.target_h;
  out.vertices = mesh.vertices;
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto [it, inserted] = mid.try_emplace({key.first, key.second}, static_cast<int>(out.vertices.size()));
    if (inserted) out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    return it->second;
  };
  out.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const int m01 = midpoint(t[0], t[1]);
    const int m12 = midpoint(t[1], t[2]);
    const int m20 = midpoint(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({m01, t[1], m12});
    out.triangles.push_back({m20, m12, t[2]});
    out.triangles.push_back({m01, m12, m20});
  }
  for (const auto& e : mesh.boundary_edges) {
    const int m = midpoint(e.v[0], e.v[1]);
    out.boundary_edges.push_back({{e.v[0], m}, e.tag});
    out.boundary_edges.push_back({{m, e.v[1]}, e.tag});
  }
  return out;
}

std::array<double, 3> barycentric(const Mesh& mesh, int tri, Point p) {
  const auto& t = mesh.triangles[static_cast<std::size_t>(tri)];
  const Point a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
  const double det = cross(b - a, c - a);
  const double l1 = cross(p - a, c - a) / det;
  const double l2 = cross(b - a, p - a) / det;
  return {1.0 - l1 - l2, l1, l2};
}

PointLocator::PointLocator(const Mesh& mesh, int buckets_per_axis) : mesh_(&mesh) {
  if (mesh.vertices.empty()) throw ParameterError("cannot locate points in an empty mesh");
  double x1 = mesh.vertices[0].x, y1 = mesh.vertices[0].y;
  x0_ = x1;
  y0_ = y1;
  for (const auto& p : mesh.vertices) {
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double w = std::max(x1 - x0_, 1e-300), h = std::max(y1 - y0_, 1e-300);
  if (buckets_per_axis <= 0) {
    // Aim for a handful of triangles per bucket, respecting the aspect ratio.
    const double cells = std::max(1.0, static_cast<double>(mesh.triangles.size()) / 4.0);
    const double aspect = w / h;
    nx_ = std::clamp(static_cast<int>(std::sqrt(cells * aspect)), 1, 1 << 14);
    ny_ = std::clamp(static_cast<int>(cells / nx_), 1, 1 << 14);
  } else {
    nx_ = ny_ = buckets_per_axis;
  }
  dx_ = w / nx_;
  dy_ = h / ny_;
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    double bx0 = 1e300, by0 = 1e300, bx1 = -1e300, by1 = -1e300;
    for (int v : tri) {
      bx0 = std::min(bx0, mesh.vertices[v].x);
      by0 = std::min(by0, mesh.vertices[v].y);
      bx1 = std::max(bx1, mesh.vertices[v].x);
      by1 = std::max(by1, mesh.vertices[v].y);
    }
    const int i0 = std::clamp(static_cast<int>((bx0 - x0_) / dx_), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>((bx1 - x0_) / dx_), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>((by0 - y0_) / dy_), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>((by1 - y0_) / dy_), 0, ny_ - 1);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(t));
  }
}

std::optional<MeshLocation> PointLocator::locate(Point p, double tol) const {
  const int ic = static_cast<int>(std::floor((p.x - x0_) / dx_));
  const int jc = static_cast<int>(std::floor((p.y - y0_) / dy_));
  MeshLocation best;
  double best_violation = std::numeric_limits<double>::infinity();
  for (int i = ic - 1; i <= ic + 1; ++i) {
    if (i < 0 || i >= nx_) continue;
    for (int j = jc - 1; j <= jc + 1; ++j) {
      if (j < 0 || j >= ny_) continue;
      for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
        const auto b = barycentric(*mesh_, t, p);
        const double violation = -std::min({b[0], b[1], b[2], 0.0});
        if (violation < best_violation) {
          best_violation = violation;
          best = {t, b};
          if (violation == 0.0) return best;
        }
      }
    }
  }
  if (best.triangle < 0 || best_violation > tol) return std::nullopt;
  double s = 0.0;
  for (auto& l : best.bary) {
    l = std::max(l, 0.0);
    s += l;
  }
  for (auto& l : best.bary) l /= s;
  return best;
}

MeshLocation PointLocator::find(Point p, double tol) const {
  auto loc = locate(p, tol);
  if (!loc)
    throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") lies outside the mesh");
  return *loc;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out.precision(17);
  out << mesh.vertices.size() << ' ' << mesh.triangles.size() << ' ' << mesh.boundary_edges.size() << '\n';
  for (const auto& p : mesh.vertices) out << p.x << ' ' << p.y << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) out << e.v[0] << ' ' << e.v[1] << ' ' << to_string(e.tag) << '\n';
}

Mesh read_mesh(std::istream& in) {
  std::size_t nv = 0, nt = 0, ne = 0;
  if (!(in >> nv >> nt >> ne)) throw FileError("mesh: bad header, expected 'nv nt ne'");
  Mesh mesh;
  mesh.vertices.resize(nv);
  mesh.triangles.resize(nt);
  for (auto& p : mesh.vertices)
    if (!(in >> p.x >> p.y)) throw FileError("mesh: truncated vertex block");
  for (auto& t : mesh.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2])) throw FileError("mesh: truncated triangle block");
    for (int v : t)
      if (v < 0 || static_cast<std::size_t>(v) >= nv) throw FileError("mesh: vertex index out of range");
  }
  for (std::size_t k = 0; k < ne; ++k) {
    BoundaryEdge e{};
    std::string tag;
    if (!(in >> e.v[0] >> e.v[1] >> tag)) throw FileError("mesh: truncated edge block");
    try {
      e.tag = boundary_tag_from_string(tag);
    } catch (const GeometryError& err) {
      throw FileError(std::string("mesh: ") + err.what());
    }
    mesh.boundary_edges.push_back(e);
  }
  return mesh;
}

}  // namespace thincascade
