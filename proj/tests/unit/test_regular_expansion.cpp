#include <gtest/gtest.h>

#include "thincascade/errors.hpp"
#include "thincascade/regular_expansion.hpp"

using namespace thincascade;

namespace {

ProblemData rich_data() {
  ProblemData d;
  d.f = EtaPolynomial({SmoothFn::polynomial({0.0, 0.0, 1.0}), SmoothFn::polynomial({1.0, 1.0})});
  d.phi_plus = {SmoothFn::constant(0.3), SmoothFn::polynomial({0.0, 0.5})};
  d.phi_minus = {SmoothFn::constant(-0.2), SmoothFn::constant(0.1)};
  return d;
}

double mean_over_section(const EtaPolynomial& p, double h, double x) { return p.integrate_eta(-h / 2, h / 2)(x) / h; }

}  // namespace

TEST(RegularExpansion, U2VanishesForCrossSectionConstantData) {
  const auto g = geometry_presets::cascade();
  const auto data = problem_presets::tp1();
  const auto u2 = compute_u2(data, effective_rhs(data, g), g);
  EXPECT_TRUE(u2[0].is_zero());
  EXPECT_TRUE(u2[1].is_zero());
}

TEST(RegularExpansion, U2SolvesCrossSectionProblem) {
  const auto g = geometry_presets::cascade();
  const auto data = rich_data();
  const auto load = effective_rhs(data, g);
  const auto u2 = compute_u2(data, load, g);
  for (int i = 1; i <= 2; ++i) {
    const double h = g.branch_width(i);
    const auto& u = u2[static_cast<std::size_t>(i - 1)];
    for (double x : {-0.7, 0.2, 0.9})
      for (double eta : {-0.3 * h, 0.0, 0.4 * h})
        EXPECT_NEAR(-u.field.eval(x, eta, 0, 2), data.f_value(x, eta) - load(i, x) / h, 1e-12);
    for (double x : {-0.5, 0.5}) {
      EXPECT_NEAR(u.d_eta(x, h / 2), -data.phi(i, +1)(x), 1e-12);
      EXPECT_NEAR(u.d_eta(x, -h / 2), -data.phi(i, -1)(x), 1e-12);
      EXPECT_NEAR(mean_over_section(u.field, h, x), 0.0, 1e-13);
    }
  }
}

TEST(RegularExpansion, U4SolvesHomogeneousNeumannCrossSectionProblem) {
  const auto g = geometry_presets::cascade();
  const auto data = rich_data();
  const auto u2 = compute_u2(data, effective_rhs(data, g), g);
  const auto u4 = recurse_u_even(4, u2, g);
  for (int i = 1; i <= 2; ++i) {
    const double h = g.branch_width(i);
    const auto& a = u2[static_cast<std::size_t>(i - 1)];
    const auto& b = u4[static_cast<std::size_t>(i - 1)];
    for (double x : {-0.4, 0.6})
      for (double eta : {-0.2 * h, 0.1 * h}) EXPECT_NEAR(-b.field.eval(x, eta, 0, 2), a.field.eval(x, eta, 2, 0), 1e-12);
    EXPECT_NEAR(b.d_eta(0.3, h / 2), 0.0, 1e-12);
    EXPECT_NEAR(b.d_eta(0.3, -h / 2), 0.0, 1e-12);
    EXPECT_NEAR(mean_over_section(b.field, h, 0.3), 0.0, 1e-13);
  }
}

TEST(RegularExpansion, OddOrdersVanishAndRecursionChecksOrder) {
  EXPECT_TRUE(zero_regular(3)[0].is_zero());
  EXPECT_TRUE(zero_regular(5)[1].is_zero());
  const auto g = geometry_presets::widening();
  const auto data = problem_presets::tp3();
  const auto u2 = compute_u2(data, effective_rhs(data, g), g);
  EXPECT_THROW(recurse_u_even(3, u2, g), ParameterError);
  EXPECT_THROW(recurse_u_even(6, u2, g), SequencingError);
}
