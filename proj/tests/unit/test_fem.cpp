#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "thincascade/errors.hpp"
#include "thincascade/fem.hpp"

using namespace thincascade;

namespace {

constexpr double pi = std::numbers::pi;

TaggedPolygon square(BoundaryTag bottom, BoundaryTag right, BoundaryTag top, BoundaryTag left) {
  TaggedPolygon p;
  p.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  p.tags = {bottom, right, top, left};
  return p;
}

std::shared_ptr<const Mesh> square_mesh(double h) {
  return std::make_shared<const Mesh>(triangulate(square(BoundaryTag::NeumannBottom1, BoundaryTag::DirichletRight,
                                                         BoundaryTag::NeumannTop1, BoundaryTag::DirichletLeft),
                                                  h));
}

}  // namespace

TEST(Fem, LinearSolutionIsReproducedExactly) {
  auto mesh = square_mesh(0.2);
  const auto sys = assemble_mixed_poisson(
      mesh, [](Point) { return 0.0; }, {{BoundaryTag::NeumannTop1, [](Point) { return 0.0; }}},
      {BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight},
      {{BoundaryTag::DirichletLeft, [](Point) { return 1.0; }}, {BoundaryTag::DirichletRight, [](Point) { return 3.0; }}});
  const auto u = solve_system(sys, 1e-13);
  for (std::size_t i = 0; i < mesh->num_vertices(); ++i) EXPECT_NEAR(u.values[i], 1.0 + 2.0 * mesh->vertices[i].x, 1e-10);
}

TEST(Fem, ManufacturedSolutionConvergesAtSecondOrderInL2) {
  const auto f = [](Point p) { return 2.0 * pi * pi * std::sin(pi * p.x) * std::cos(pi * p.y); };
  const auto exact = [](Point p) {
    ValueGrad v;
    v.value = std::sin(pi * p.x) * std::cos(pi * p.y);
    v.grad = {pi * std::cos(pi * p.x) * std::cos(pi * p.y), -pi * std::sin(pi * p.x) * std::sin(pi * p.y)};
    return v;
  };
  double prev_l2 = 0, prev_h1 = 0;
  auto mesh = square_mesh(0.1);
  for (int level = 0; level < 3; ++level) {
    if (level) mesh = std::make_shared<const Mesh>(refine_uniform(*mesh));
    const auto sys = assemble_mixed_poisson(mesh, f, {}, {BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight}, {},
                                            AssemblyOptions{4, 3});
    const auto err = difference_norms(solve_system(sys, 1e-12), exact, {}, ErrorMeasure::Quadrature, 6);
    if (level) {
      EXPECT_NEAR(std::log2(prev_l2 / err.l2), 2.0, 0.2);
      EXPECT_NEAR(std::log2(prev_h1 / err.h1_semi), 1.0, 0.15);
    }
    prev_l2 = err.l2;
    prev_h1 = err.h1_semi;
  }
}

TEST(Fem, PureNeumannProblemIsProjectedAndZeroMean) {
  auto mesh = std::make_shared<const Mesh>(
      triangulate(square(BoundaryTag::Wall, BoundaryTag::Wall, BoundaryTag::Wall, BoundaryTag::Wall), 0.1));
  const auto sys = assemble_mixed_poisson(mesh, [](Point p) { return std::cos(pi * p.x); }, {}, {});
  EXPECT_TRUE(sys.zero_mean);
  EXPECT_LT(std::abs(sys.compatibility_defect), 1e-3);
  const auto u = solve_system(sys, 1e-12);
  EXPECT_NEAR(u.mean(), 0.0, 1e-12);
  const auto exact = [](Point p) {
    ValueGrad v;
    v.value = std::cos(pi * p.x) / (pi * pi);
    v.grad = {-std::sin(pi * p.x) / pi, 0.0};
    return v;
  };
  EXPECT_LT(difference_norms(u, exact).l2, 2e-3);
}

TEST(Fem, IncompatibleNeumannDataReportsDefect) {
  auto mesh = std::make_shared<const Mesh>(
      triangulate(square(BoundaryTag::Wall, BoundaryTag::Wall, BoundaryTag::Wall, BoundaryTag::Wall), 0.2));
  const auto sys = assemble_mixed_poisson(mesh, [](Point) { return 1.0; }, {}, {});
  EXPECT_NEAR(sys.compatibility_defect, 1.0, 1e-12);
}

TEST(Fem, JacobiAndCholeskyPreconditionersAgree) {
  auto mesh = square_mesh(0.1);
  const auto sys = assemble_mixed_poisson(mesh, [](Point p) { return p.x * p.y; }, {},
                                          {BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight});
  SolverOptions a, b;
  a.preconditioner = Preconditioner::Jacobi;
  a.tol = b.tol = 1e-12;
  const auto ua = solve_system(sys, a), ub = solve_system(sys, b);
  for (std::size_t i = 0; i < ua.values.size(); ++i) EXPECT_NEAR(ua.values[i], ub.values[i], 1e-10);
}

TEST(Fem, IterationCapRaisesSolverErrorWithHistory) {
  auto mesh = square_mesh(0.05);
  const auto sys = assemble_mixed_poisson(mesh, [](Point) { return 1.0; }, {},
                                          {BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight});
  SolverOptions o;
  o.preconditioner = Preconditioner::Jacobi;
  o.max_iterations = 2;
  try {
    solve_system(sys, o);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_FALSE(e.residual_history.empty());
  }
}

TEST(Fem, InterpolantHasZeroNodalDifference) {
  auto mesh = square_mesh(0.1);
  const auto fn = [](Point p) { return std::exp(p.x) * p.y; };
  const auto field = interpolate(mesh, fn);
  const auto d = difference_norms(
      field,
      [&](Point p) {
        ValueGrad v;
        v.value = fn(p);
        v.grad = {std::exp(p.x) * p.y, std::exp(p.x)};
        return v;
      },
      {}, ErrorMeasure::NodalInterpolant);
  EXPECT_LT(d.h1(), 1e-13);
}

TEST(Fem, LineAndBoundaryIntegrals) {
  auto mesh = square_mesh(0.1);
  const auto field = interpolate(mesh, [](Point p) { return 1.0 + p.y; });
  const auto line = vertical_line_integral(field, 0.37);
  EXPECT_NEAR(line.length, 1.0, 1e-12);
  EXPECT_NEAR(line.integral, 1.5, 1e-12);
  EXPECT_NEAR(boundary_integral(*mesh, BoundaryTag::NeumannTop1, [](Point p) { return p.x; }), 0.5, 1e-12);
  EXPECT_NEAR(boundary_integral(field, BoundaryTag::NeumannBottom1, [](Point) { return 1.0; }), 1.0, 1e-12);
  EXPECT_NEAR(integrate(field), 1.5, 1e-12);
  EXPECT_NEAR(integrate_function(*mesh, [](Point p) { return p.x * p.x; }), 1.0 / 3.0, 1e-12);
}
