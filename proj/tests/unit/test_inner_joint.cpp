#include <gtest/gtest.h>

#include <cmath>

#include "thincascade/composite.hpp"
#include "thincascade/errors.hpp"

using namespace thincascade;

namespace {

InnerDomain domain_for(const CascadeGeometry& g) {
  return make_inner_domain(g, default_truncation_length(g), default_inner_target_h(g));
}

}  // namespace

TEST(InnerJoint, StraightStripN0IsLinearWithZeroC0) {
  const auto g = geometry_presets::straight();
  const auto d = domain_for(g);
  const auto n0 = solve_frak_N0(d);
  for (std::size_t v = 0; v < d.mesh->num_vertices(); ++v)
    EXPECT_NEAR(n0.field_N0.values[v], d.mesh->vertices[v].x, 1e-9);
  EXPECT_NEAR(n0.C0, 0.0, 1e-9);
}

TEST(InnerJoint, N0GrowsWithInverseBranchThickness) {
  const auto g = geometry_presets::cascade();
  const auto n0 = solve_frak_N0(domain_for(g));
  EXPECT_NEAR(n0.slope_left, 1.0 / g.h1, 1e-6);
  EXPECT_NEAR(n0.slope_right, 1.0 / g.h2, 1e-6);
}

TEST(InnerJoint, CrossSectionMeanOfAffineField) {
  const auto d = domain_for(geometry_presets::widening());
  const auto f = interpolate(d.mesh, [](Point p) { return 2.0 + 3.0 * p.x + p.y; });
  EXPECT_NEAR(cross_section_mean(f, -4.25), 2.0 - 12.75, 1e-10);
}

TEST(InnerJoint, FarFieldPsiOfOrderOneIsXiTimesOmega2Slope) {
  const auto p = run_pipeline(problem_presets::tp2(), geometry_presets::widening());
  const auto psi = far_field_psi(1, 2, p.omega, p.u);
  EXPECT_NEAR(psi.coeff(1, 0), p.omega.at(2).derivative(2, 1, 0.0), 1e-14);
  EXPECT_NEAR(psi.eval(2.0, 0.3), 2.0 * p.omega.at(2).derivative(2, 1, 0.0), 1e-14);
}

TEST(InnerJoint, FirstCorrectorIsCompatibleAndMatchesTheFormula) {
  const auto p = run_pipeline(problem_presets::tp2(), geometry_presets::widening());
  const auto& n1 = *p.correctors.at(1);
  EXPECT_LT(std::abs(n1.compatibility_defect), 1e-10);
  EXPECT_LT(n1.flatness, 1e-6);
  EXPECT_NEAR(delta_plus_formula_check(n1, *p.inner), n1.delta_plus, 1e-8);
  const auto n0 = solve_frak_N0(*p.inner);
  EXPECT_NEAR(n1.delta_plus, p.geom.h1 * p.omega.at(2).derivative(1, 1, 0.0) * n0.C0, 1e-3 * std::abs(n1.delta_plus));
}

TEST(InnerJoint, OddDataGiveVanishingDeltaAndOddCorrectors) {
  const auto p = run_pipeline(problem_presets::tp3(), geometry_presets::widening());
  for (const auto& [k, corr] : p.correctors) {
    EXPECT_LT(std::abs(corr->delta_plus), 1e-10) << k;
    if (corr->field.max_abs() > 1e-12) {
      EXPECT_LT(symmetry_defect(corr->field, false), 1e-8) << k;
    }
  }
}

TEST(InnerJoint, ZeroForcingGivesZeroCorrector) {
  const auto p = run_pipeline(problem_presets::tp0(), geometry_presets::widening());
  for (const auto& [k, corr] : p.correctors) {
    EXPECT_TRUE(corr->forcing.is_zero());
    EXPECT_EQ(corr->field.max_abs(), 0.0);
  }
}

TEST(InnerJoint, InnerDataOfTp1AtOrderOneHasNoVolumeLoad) {
  const auto p = run_pipeline(problem_presets::tp1(), geometry_presets::widening());
  const auto data = inner_data_k(1, p.data, p.geom, p.omega, p.u);
  EXPECT_DOUBLE_EQ(data.volume({0.1, 0.2}), 0.0);
  EXPECT_DOUBLE_EQ(data.support_radius(), 2.5);
}

TEST(InnerJoint, InnerTermTendsToFarFieldAwayFromTheJoint) {
  const auto p = run_pipeline(problem_presets::tp2(), geometry_presets::widening());
  const auto t1 = p.inner_term(1);
  const double xi = 5.0;
  const double far = p.omega.at(3).value(2, 0.0) + xi * p.omega.at(2).derivative(2, 1, 0.0);
  EXPECT_NEAR(t1.eval({xi, 0.1}).value, far, 1e-6);
}
