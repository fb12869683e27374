#include <gtest/gtest.h>

#include <cmath>

#include "thincascade/composite.hpp"
#include "thincascade/errors.hpp"

using namespace thincascade;

TEST(Cutoff, SmoothstepEndpointsAndSymmetry) {
  EXPECT_EQ(smoothstep(-0.5).value, 0.0);
  EXPECT_EQ(smoothstep(1.5).value, 1.0);
  EXPECT_NEAR(smoothstep(0.5).value, 0.5, 1e-15);
  EXPECT_NEAR(smoothstep(0.3).value + smoothstep(0.7).value, 1.0, 1e-15);
  EXPECT_NEAR(smoothstep(0.0).d1, 0.0, 1e-15);
  EXPECT_NEAR(smoothstep(1.0).d2, 0.0, 1e-15);
}

TEST(Cutoff, JointCutoffIsOneNearJointAndZeroOutside) {
  CutoffSpec s;
  const double eps = 0.1, r = s.l * std::pow(eps, s.alpha);
  EXPECT_NEAR(cutoff_eval(s, CutoffKind::Joint, 0.5 * r, eps).value, 1.0, 1e-15);
  EXPECT_NEAR(cutoff_eval(s, CutoffKind::Joint, 2.5 * r, eps).value, 0.0, 1e-15);
  EXPECT_NEAR(cutoff_eval(s, CutoffKind::LeftEnd, -1.0, eps).value, 1.0, 1e-15);
  EXPECT_NEAR(cutoff_eval(s, CutoffKind::LeftEnd, 0.0, eps).value, 0.0, 1e-15);
  EXPECT_NEAR(cutoff_eval(s, CutoffKind::RightEnd, 1.0, eps).value, 1.0, 1e-15);
}

TEST(Cutoff, AlphaOutsideRangeIsRejected) {
  CutoffSpec s;
  s.alpha = 0.5;
  EXPECT_THROW(s.validate(), ParameterError);
  s.alpha = 1.0;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Composite, MissingOrdersAreSequencingErrors) {
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp1(), geometry_presets::widening()));
  EXPECT_THROW(assemble_composite(2, 0.1, p), SequencingError);
  EXPECT_NO_THROW(assemble_composite(1, 0.1, p));
}

TEST(Composite, CapabilityErrorNamesComputeDStar) {
  auto data = problem_presets::tp2();
  data.f = EtaPolynomial({SmoothFn::polynomial({0.0, 1.0}, 1)});
  PipelineOptions o;
  o.m = 2;
  try {
    run_pipeline(data, geometry_presets::widening(), o);
    FAIL() << "expected CapabilityError";
  } catch (const CapabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("compute_d_star"), std::string::npos);
  }
}

TEST(Composite, AwayFromJointAndEndsItIsTheOmegaSeries) {
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp1(), geometry_presets::widening()));
  const double eps = 0.05;
  const auto U = assemble_composite(1, eps, p);
  for (double x : {-0.4, 0.45}) {
    const auto v = composite_eval(U, {x, 0.2 * eps});
    EXPECT_NEAR(v.value, omega_partial_sum(p->omega, eps, 2, x).value, 1e-12);
  }
}

TEST(Composite, AtTheJointItIsTheInnerExpansion) {
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp2(), geometry_presets::widening()));
  const double eps = 0.05;
  const auto U = assemble_composite(1, eps, p);
  const Point q{0.2 * eps, 0.1 * eps};
  EXPECT_NEAR(composite_eval(U, q).value, composite_eval(U, q, JointBlend::InnerOnly).value, 1e-14);
  EXPECT_NE(composite_eval(U, q).value, composite_eval(U, q, JointBlend::RegularOnly).value);
}

TEST(Composite, OmegaPartialSumOrderZeroIsOmega2) {
  const auto p = run_pipeline(problem_presets::tp1(), geometry_presets::widening());
  EXPECT_NEAR(omega_partial_sum(p.omega, 0.1, 0, 0.3).value, 0.5 * (1 - 0.09), 1e-14);
  EXPECT_NEAR(omega_partial_sum(p.omega, 0.1, 1, 0.3).value,
              p.omega.at(2).eval(0.3) + 0.1 * p.omega.at(3).eval(0.3), 1e-14);
}

TEST(Composite, Tp1Omega3CarriesTheJointAreaJump) {
  const auto p = run_pipeline(problem_presets::tp1(), geometry_presets::widening());
  const auto& w3 = p.omega.at(3);
  const double dstar = p.constants.d_star.at(3);
  EXPECT_NEAR(p.geom.h1 * w3.derivative(1, 1, 0.0) - p.geom.h2 * w3.derivative(2, 1, 0.0), dstar, 1e-13);
  EXPECT_NEAR(w3.value(2, 0.0) - w3.value(1, 0.0), p.constants.delta_plus.at(1), 1e-13);
}
