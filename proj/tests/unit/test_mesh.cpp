#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "thincascade/errors.hpp"
#include "thincascade/mesh.hpp"

using namespace thincascade;

namespace {

TaggedPolygon l_shape() {
  TaggedPolygon p;
  p.vertices = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  p.tags.assign(6, BoundaryTag::Wall);
  return p;
}

}  // namespace

TEST(Mesh, MappedMeshCoversThinOutlineWithQuality) {
  const auto outline = scaled_outline(geometry_presets::widening(), 0.1);
  const Mesh m = mapped_triangulate(outline, 0.1 / 8);
  EXPECT_NEAR(m.area(), outline.signed_area(), 1e-12);
  EXPECT_NO_THROW(check_mesh(m));
  EXPECT_GE(mesh_quality(m).min_angle_deg, 20.0);
}

TEST(Mesh, DelaunayMeshesNonMonotonePolygon) {
  const auto p = l_shape();
  const Mesh m = delaunay_triangulate(p, 0.2);
  EXPECT_NEAR(m.area(), 3.0, 1e-12);
  EXPECT_GE(mesh_quality(m).min_angle_deg, 20.0);
  EXPECT_THROW(mapped_triangulate(p, 0.2), MeshingError);
  EXPECT_NO_THROW(triangulate(p, 0.2));
}

TEST(Mesh, UniformRefinementQuadruplesTrianglesAndKeepsVertices) {
  const auto outline = scaled_outline(geometry_presets::straight(), 0.2);
  const Mesh m = triangulate(outline, 0.05);
  const Mesh r = refine_uniform(m);
  EXPECT_EQ(r.num_triangles(), 4 * m.num_triangles());
  for (std::size_t i = 0; i < m.num_vertices(); ++i) EXPECT_EQ(r.vertices[i], m.vertices[i]);
  EXPECT_NEAR(r.area(), m.area(), 1e-13);
  EXPECT_EQ(r.boundary_edges.size(), 2 * m.boundary_edges.size());
}

TEST(Mesh, LocatorFindsContainingTriangle) {
  const Mesh m = triangulate(l_shape(), 0.25);
  const PointLocator loc(m);
  const Point q{0.3, 1.7};
  const auto hit = loc.locate(q);
  ASSERT_TRUE(hit.has_value());
  Point back{0, 0};
  for (int k = 0; k < 3; ++k) back = back + hit->bary[k] * m.vertices[m.triangles[hit->triangle][k]];
  EXPECT_NEAR(back.x, q.x, 1e-12);
  EXPECT_NEAR(back.y, q.y, 1e-12);
  EXPECT_FALSE(loc.locate({1.5, 1.5}).has_value());
  EXPECT_THROW(loc.find({1.5, 1.5}), DomainError);
}

TEST(Mesh, WriteReadRoundTrip) {
  const Mesh m = triangulate(l_shape(), 0.5);
  std::stringstream s;
  write_mesh(s, m);
  const Mesh r = read_mesh(s);
  EXPECT_EQ(r.num_vertices(), m.num_vertices());
  EXPECT_EQ(r.num_triangles(), m.num_triangles());
  EXPECT_EQ(r.boundary_edges.size(), m.boundary_edges.size());
  EXPECT_NEAR(r.area(), m.area(), 1e-12);
}

TEST(Mesh, BoundaryTagsSurviveMeshing) {
  const Mesh m = triangulate(scaled_outline(geometry_presets::widening(), 0.1), 0.02);
  for (auto t : {BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight, BoundaryTag::NeumannTop1,
                 BoundaryTag::NeumannBottom2, BoundaryTag::Gamma})
    EXPECT_TRUE(m.has_tag(t)) << to_string(t);
}
