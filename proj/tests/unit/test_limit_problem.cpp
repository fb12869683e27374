#include <gtest/gtest.h>

#include <cmath>

#include "thincascade/errors.hpp"
#include "thincascade/limit_problem.hpp"
#include "thincascade/oracles/fd_transmission_bvp.hpp"

using namespace thincascade;

TEST(LimitProblem, EffectiveLoadOfTp1IsBranchThickness) {
  const auto g = geometry_presets::cascade();
  const auto F = effective_rhs(problem_presets::tp1(), g);
  EXPECT_NEAR(F(1, -0.3), g.h1, 1e-14);
  EXPECT_NEAR(F(2, 0.3), g.h2, 1e-14);
}

TEST(LimitProblem, Tp1SymmetricOmega2IsTheParabola) {
  const auto g = geometry_presets::widening();
  const auto w = solve_omega2(effective_rhs(problem_presets::tp1(), g), g);
  for (double x : {-0.9, -0.5, 0.0, 0.4, 1.0}) EXPECT_NEAR(w.eval(x), 0.5 * (1 - x * x), 1e-13);
  EXPECT_NEAR(w.eval_dx(0.5), -0.5, 1e-13);
}

TEST(LimitProblem, Omega2SatisfiesTransmissionConditionsOnCascade) {
  const auto g = geometry_presets::cascade();
  const auto w = solve_omega2(effective_rhs(problem_presets::tp2(), g), g);
  const auto r = transmission_residual(w, g);
  EXPECT_LT(std::abs(r.value_jump), 1e-13);
  EXPECT_LT(std::abs(r.flux_jump), 1e-13);
  EXPECT_LT(std::abs(r.left_end), 1e-13);
  EXPECT_LT(std::abs(r.right_end), 1e-13);
}

TEST(LimitProblem, Omega2MatchesFiniteDifferenceOracle) {
  for (const char* gname : {"widening", "cascade"})
    for (const char* tp : {"TP1", "TP2", "TP3"}) {
      const auto g = geometry_presets::by_name(gname);
      const auto F = effective_rhs(problem_presets::by_name(tp), g);
      const auto w = solve_omega2(F, g);
      const auto fd = oracles::solve_transmission_bvp([&](double x) { return F(1, x); },
                                                      [&](double x) { return F(2, x); }, g.h1, g.h2, 2000);
      for (std::size_t j = 0; j < fd.x.size(); j += 50) EXPECT_NEAR(w.eval(fd.x[j]), fd.w[j], 1e-7) << tp << gname;
    }
}

TEST(LimitProblem, PrintedClosedFormDisagreesWithTheTransmissionSolution) {
  const auto g = geometry_presets::widening();
  const auto F = effective_rhs(problem_presets::tp1(), g);
  const auto w = solve_omega2(F, g);
  EXPECT_NEAR(w.eval(0.0), 0.5, 1e-14);
  const auto d = printed_omega2_discrepancy(F, g, w);
  EXPECT_GT(std::max(d[0], d[1]), 0.1);
}

TEST(LimitProblem, DStarThreeIsExcessJointAreaTimesLoad) {
  const auto g = geometry_presets::widening();
  const double excess = g.joint.area() - g.l * (g.h1 + g.h2) / 2;
  EXPECT_NEAR(compute_d_star(problem_presets::tp1(), g, 3), excess, 1e-12);
  EXPECT_NEAR(compute_d_star(problem_presets::tp1(), geometry_presets::straight(), 3), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(compute_d_star(problem_presets::tp1(), g, 2), 0.0);
}

TEST(LimitProblem, DStarNeedsDerivativeCapability) {
  auto data = problem_presets::tp2();
  data.f = EtaPolynomial({SmoothFn::polynomial({0.0, 1.0}, 0)});
  EXPECT_NO_THROW(compute_d_star(data, geometry_presets::widening(), 3));
  EXPECT_THROW(compute_d_star(data, geometry_presets::widening(), 4), CapabilityError);
}

TEST(LimitProblem, OmegaKIsAffineWithPrescribedJumps) {
  const auto g = geometry_presets::cascade();
  TransmissionConstants c;
  c.d_star[3] = 0.3;
  c.delta_plus[1] = -0.2;
  const auto w = solve_omega_k(3, c, g);
  EXPECT_NEAR(w.value(1, -1.0), 0.0, 1e-14);
  EXPECT_NEAR(w.value(2, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(w.derivative(1, 2, -0.5), 0.0, 1e-14);
  const auto r = transmission_residual(w, g, -0.2, 0.3);
  EXPECT_LT(std::abs(r.value_jump), 1e-13);
  EXPECT_LT(std::abs(r.flux_jump), 1e-13);
}
