#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thincascade/geometry.hpp"

namespace thincascade {

struct BoundaryEdge {
  std::array<int, 2> v;
  BoundaryTag tag;
};

struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  double target_h = 0.0;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_triangles() const { return triangles.size(); }
  double triangle_area(std::size_t t) const;
  Point centroid(std::size_t t) const;
  double area() const;
  /// Vertex indices touching an edge with the given tag.
  std::vector<int> tagged_vertices(BoundaryTag tag) const;
  bool has_tag(BoundaryTag tag) const;
};

struct MeshQuality {
  double min_angle_deg = 0.0;
  double max_diameter = 0.0;
  double min_area = 0.0;
};

MeshQuality mesh_quality(const Mesh& mesh);

/// Throws MeshingError when orientation, quality floor or size bound is violated.
void check_mesh(const Mesh& mesh, double min_angle_deg = 20.0, double size_factor = 1.5);

enum class MesherKind { Auto, Mapped, Delaunay };

/// Column-aligned mesh of a polygon whose boundary splits into a bottom and a
/// top chain, both strictly monotone in x, closed by one vertical edge at
/// each end.  Throws MeshingError when the outline is not of that form or
/// the quality floor cannot be met.
Mesh mapped_triangulate(const TaggedPolygon& outline, double target_h);

/// Conforming Delaunay refinement (Ruppert) of an arbitrary simple polygon.
Mesh delaunay_triangulate(const TaggedPolygon& outline, double target_h,
                          double min_angle_deg = 21.0);

/// Mapped mesher where applicable, Delaunay refinement otherwise.
Mesh triangulate(const TaggedPolygon& outline, double target_h, MesherKind kind = MesherKind::Auto);

/// Splits every triangle into four through its edge midpoints.  The coarse
/// vertices keep their indices, so coarse nodal values embed directly.
Mesh refine_uniform(const Mesh& mesh);

struct MeshLocation {
  int triangle = -1;
  std::array<double, 3> bary{};
};

/// Bucket grid over triangle bounding boxes.
class PointLocator {
public:
  explicit PointLocator(const Mesh& mesh, int buckets_per_axis = 0);

  /// Containing triangle of p, allowing points up to `tol` (relative to the
  /// local element size) outside the closure; barycentrics are clamped.
  std::optional<MeshLocation> locate(Point p, double tol = 1e-9) const;
  /// Like locate but throws DomainError.
  MeshLocation find(Point p, double tol = 1e-9) const;

private:
  const Mesh* mesh_;
  double x0_ = 0, y0_ = 0, dx_ = 1, dy_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

std::array<double, 3> barycentric(const Mesh& mesh, int tri, Point p);

void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace thincascade
