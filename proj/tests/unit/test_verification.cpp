#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thincascade/errors.hpp"
#include "thincascade/verification.hpp"

using namespace thincascade;

namespace {

ReferenceOptions coarse() {
  ReferenceOptions o;
  o.n_across = 4;
  return o;
}

}  // namespace

TEST(Verification, ZeroProblemHasZeroReference) {
  const auto r = reference_solve(problem_presets::tp0(), geometry_presets::widening(), 0.1, coarse());
  EXPECT_EQ(r.coarse.max_abs(), 0.0);
  EXPECT_EQ(r.fine.max_abs(), 0.0);
}

TEST(Verification, Tp1ReferenceIsCloseToOmega2) {
  const double eps = 0.1;
  const auto r = reference_solve(problem_presets::tp1(), geometry_presets::widening(), eps, coarse());
  EXPECT_NEAR(r.best().max_abs(), 0.5, 2.0 * eps);
  EXPECT_GT(r.best().max_abs(), 0.5);
}

TEST(Verification, ReferenceAgainstItsOwnNodalValuesIsZero) {
  const auto r = reference_solve(problem_presets::tp1(), geometry_presets::straight(), 0.2, coarse());
  const auto& f = r.coarse;
  const PointLocator loc(*f.mesh);
  const auto self = [&](Point p) {
    const auto at = loc.find(p);
    ValueGrad v;
    v.value = f.eval_in(at);
    v.grad = f.gradient_in(at.triangle);
    return v;
  };
  EXPECT_LT(error_norms(f, self, Region::full()).h1(), 1e-12);
}

TEST(Verification, EmptyRegionIsRejected) {
  const auto r = reference_solve(problem_presets::tp1(), geometry_presets::straight(), 0.2, coarse());
  Region empty;
  empty.name = "empty";
  empty.x_intervals = {{2.0, 3.0}};
  EXPECT_THROW(error_norms(r.coarse, [](Point) { return ValueGrad{}; }, empty), ParameterError);
}

TEST(Verification, CrossSectionAverageOfConstantIsThatConstant) {
  const auto g = geometry_presets::cascade();
  const double eps = 0.1;
  auto mesh = std::make_shared<const Mesh>(triangulate(scaled_outline(g, eps), eps * 0.1));
  const auto c = interpolate(mesh, [](Point) { return 2.5; });
  for (int branch = 1; branch <= 2; ++branch)
    for (double v : cross_section_average(c, g, eps, branch, {branch == 1 ? -0.6 : 0.6}))
      EXPECT_NEAR(v, 2.5, 1e-12);
  EXPECT_THROW(cross_section_average(c, g, eps, 1, {0.6}), ParameterError);
}

TEST(Verification, RateFitRecoversPowerLaw) {
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * std::pow(e, 1.625));
  const auto fit = fit_rate(eps, err);
  EXPECT_NEAR(fit.slope, 1.625, 1e-12);
  EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-10);
  EXPECT_THROW(fit_rate({0.1, 0.2}, {1.0, 2.0}), ParameterError);
}

TEST(Verification, ZeroProblemStudyIsAllZeroPass) {
  const auto g = geometry_presets::widening();
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp0(), g));
  StudyCase s;
  s.id = "zero";
  s.eps = {0.2, 0.1, 0.05};
  ReferenceSet refs;
  fill_references(refs, problem_presets::tp0(), g, s.eps, coarse(), s.cutoff, 2);
  const auto r = convergence_study(s, p, refs);
  EXPECT_TRUE(r.all_zero);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(Verification, StudyCsvIsDeterministicAndFollowsSchema) {
  const auto g = geometry_presets::widening();
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp1(), g));
  StudyCase s;
  s.id = "c1";
  s.eps = {0.2, 0.141, 0.1};
  auto run = [&] {
    ReferenceSet refs;
    fill_references(refs, problem_presets::tp1(), g, s.eps, coarse(), s.cutoff, 3);
    std::ostringstream out;
    write_report_csv_header(out);
    write_report_csv(out, convergence_study(s, p, refs, 3));
    return out.str();
  };
  const auto a = run(), b = run();
  EXPECT_EQ(a, b);
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "case_id,eps,target_h,region,norm,error,self_error,slope,expected,pass");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
  }
  EXPECT_EQ(rows, 3);
}

TEST(Verification, Omega2ErrorDecreasesWithEps) {
  const auto g = geometry_presets::widening();
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp1(), g));
  StudyCase s;
  s.eps = {0.2, 0.1, 0.05};
  ReferenceSet refs;
  fill_references(refs, problem_presets::tp1(), g, s.eps, coarse(), s.cutoff, 3);
  const auto r = convergence_study(s, p, refs, 3);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_GT(r.rows[0].error, r.rows[1].error);
  EXPECT_GT(r.rows[1].error, r.rows[2].error);
  EXPECT_GT(r.fit.slope, 0.75);
}
