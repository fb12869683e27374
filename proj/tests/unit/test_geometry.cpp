#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "thincascade/errors.hpp"
#include "thincascade/geometry.hpp"

using namespace thincascade;

TEST(Geometry, ShoelaceAreaOfUnitSquare) {
  EXPECT_DOUBLE_EQ(shoelace_area({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 1.0);
  EXPECT_DOUBLE_EQ(shoelace_area({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), -1.0);
}

TEST(Geometry, StraightJointAreaIsLTimesMeanThickness) {
  const auto g = geometry_presets::straight(1.0, 1.0, 1.0);
  EXPECT_NEAR(g.joint.area(), 1.0, 1e-14);
  EXPECT_TRUE(g.is_straight_strip());
  EXPECT_TRUE(g.symmetric_in_eta());
}

TEST(Geometry, WideningAddsAreaNarrowingRemovesIt) {
  EXPECT_GT(geometry_presets::widening().joint.area(), 1.0);
  EXPECT_LT(geometry_presets::narrowing().joint.area(), 1.0);
  EXPECT_FALSE(geometry_presets::widening().is_straight_strip());
}

TEST(Geometry, JointEndsMustNotExceedBranchThickness) {
  auto g = geometry_presets::straight();
  g.joint = JointProfile({{-0.5, 0.5, 0.5}, {0.5, 1.2, 0.5}});
  EXPECT_THROW(g.validate(), GeometryError);
}

TEST(Geometry, ProfileParsingSkipsCommentsAndRejectsGarbage) {
  const auto p = parse_joint_profile("# xi upper lower\n-0.5 0.5 0.5\n0 1 1\n0.5 0.5 0.5\n");
  EXPECT_EQ(p.breakpoints().size(), 3u);
  EXPECT_DOUBLE_EQ(p.upper(0.0), 1.0);
  EXPECT_DOUBLE_EQ(p.upper(0.25), 0.75);
  EXPECT_THROW(parse_joint_profile("-0.5 0.5\n"), GeometryError);
}

TEST(Geometry, MissingProfileFileIsAFileError) {
  EXPECT_THROW(load_joint_profile("/nonexistent/joint.txt"), FileError);
}

TEST(Geometry, ScaledOutlineAreaAndTags) {
  const auto g = geometry_presets::straight();
  const double eps = 0.1;
  const auto outline = scaled_outline(g, eps);
  outline.validate();
  EXPECT_NEAR(outline.signed_area(), 2.0 * eps, 1e-14);
  int gamma = 0, dir = 0;
  for (auto t : outline.tags) {
    gamma += t == BoundaryTag::Gamma;
    dir += t == BoundaryTag::DirichletLeft || t == BoundaryTag::DirichletRight;
  }
  EXPECT_GT(gamma, 0);
  EXPECT_EQ(dir, 2);
}

TEST(Geometry, ScaledOutlineAreaOfWidening) {
  const auto g = geometry_presets::widening();
  const double eps = 0.05;
  const double expected = 2.0 * eps + eps * eps * (g.joint.area() - 1.0);
  EXPECT_NEAR(scaled_outline(g, eps).signed_area(), expected, 1e-13);
}

TEST(Geometry, EpsOutOfRangeIsRejected) {
  EXPECT_THROW(scaled_outline(geometry_presets::widening(), 0.0), ParameterError);
  EXPECT_THROW(scaled_outline(geometry_presets::widening(), 0.7), ParameterError);
}

TEST(Geometry, TruncatedOutlineCarriesTruncationTags) {
  const auto g = geometry_presets::cascade();
  const double L = default_truncation_length(g);
  EXPECT_GE(L, minimum_truncation_length(g));
  const auto o = truncated_inner_outline(g, L);
  o.validate();
  bool left = false, right = false;
  for (auto t : o.tags) {
    left |= t == BoundaryTag::TruncLeft;
    right |= t == BoundaryTag::TruncRight;
  }
  EXPECT_TRUE(left && right);
  EXPECT_NEAR(o.signed_area(), L * g.h1 + L * g.h2 + g.joint.area() - g.l / 2 * (g.h1 + g.h2), 1e-12);
}

TEST(Geometry, SelfIntersectingPolygonIsRejected) {
  TaggedPolygon bow;
  bow.vertices = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  bow.tags.assign(4, BoundaryTag::Wall);
  EXPECT_THROW(bow.validate(), GeometryError);
}

TEST(Geometry, RegionsSelectTheExpectedBands) {
  const auto thin = Region::thin_rectangles(0.1, 0.75, 1.0);
  const double cut = 2.0 * std::pow(0.1, 0.75);
  EXPECT_FALSE(thin.contains_x(0.9 * cut));
  EXPECT_TRUE(thin.contains_x(1.1 * cut));
  EXPECT_TRUE(thin.contains_x(-0.9));
  const auto joint = Region::joint_neighbourhood(0.1, 1.0);
  EXPECT_TRUE(joint.contains_x(0.09));
  EXPECT_FALSE(joint.contains_x(0.11));
}

TEST(Geometry, BoundaryTagNamesRoundTrip) {
  for (auto t : {BoundaryTag::DirichletLeft, BoundaryTag::NeumannTop2, BoundaryTag::Gamma, BoundaryTag::TruncRight})
    EXPECT_EQ(boundary_tag_from_string(to_string(t)), t);
}
