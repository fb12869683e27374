#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include <Eigen/Sparse>

#include "thincascade/mesh.hpp"

namespace thincascade {

using ScalarFn = std::function<double(Point)>;

struct ValueGrad {
  double value = 0.0;
  Point grad{};
};

using FieldFn = std::function<ValueGrad(Point)>;

/// P1 nodal field on a shared, immutable mesh.
struct ScalarField {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(std::shared_ptr<const Mesh> m, std::vector<double> v);

  double eval_in(const MeshLocation& loc) const;
  Point gradient_in(int triangle) const;
  /// Area-weighted mean over the whole mesh.
  double mean() const;
  double max_abs() const;
};

ScalarField interpolate(std::shared_ptr<const Mesh> mesh, const ScalarFn& fn);

enum class Preconditioner { Jacobi, Cholesky };

struct AssembledSystem {
  std::shared_ptr<const Mesh> mesh;
  Eigen::SparseMatrix<double> matrix;  // free unknowns only
  Eigen::VectorXd load;
  std::vector<int> dof_of_vertex;  // -1 for Dirichlet vertices
  std::vector<double> dirichlet_values;  // per vertex, meaningful where dof is -1
  bool zero_mean = false;
  double compatibility_defect = 0.0;
  std::vector<double> lumped_mass;  // per vertex
};

struct AssemblyOptions {
  int load_degree = 2;  // triangle rule degree; 2 is the three-point rule
  int edge_points = 2;  // Gauss points per boundary edge
};

/// Galerkin system for -lap u = f with flux data g = du/dn on tagged edges
/// (outward normal), Dirichlet data on `dirichlet_tags` (zero unless given
/// in `dirichlet_data`).  Tags without data are homogeneous Neumann.  With
/// no Dirichlet tags the zero-mean constraint is armed and the load is
/// projected orthogonal to constants.
AssembledSystem assemble_mixed_poisson(std::shared_ptr<const Mesh> mesh, const ScalarFn& volumetric_load,
                                       const std::map<BoundaryTag, ScalarFn>& neumann_data,
                                       const std::set<BoundaryTag>& dirichlet_tags,
                                       const std::map<BoundaryTag, ScalarFn>& dirichlet_data = {},
                                       const AssemblyOptions& options = {});

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> residual_history;
};

struct SolverOptions {
  double tol = 1e-10;
  Preconditioner preconditioner = Preconditioner::Cholesky;
  int max_iterations = 0;  // 0: 50 * sqrt(dof)
};

/// Preconditioned conjugate gradients.  Throws SolverError with the residual
/// history when the iteration cap is hit.
ScalarField solve_system(const AssembledSystem& sys, const SolverOptions& options = {},
                         SolveStats* stats = nullptr);
ScalarField solve_system(const AssembledSystem& sys, double tol, SolveStats* stats = nullptr);

/// Selects elements by centroid; empty means the whole mesh.
using ElementFilter = std::function<bool(Point)>;

double integrate(const ScalarField& field, const ElementFilter& filter = {});
double l2_norm(const ScalarField& field, const ElementFilter& filter = {});
double h1_seminorm(const ScalarField& field, const ElementFilter& filter = {});
/// Integral of fn over the filtered elements (no field involved).
double integrate_function(const Mesh& mesh, const ScalarFn& fn, const ElementFilter& filter = {}, int degree = 4);
double filtered_area(const Mesh& mesh, const ElementFilter& filter);

/// How the difference between a field and a smooth approximant is measured.
///   Quadrature: the approximant is sampled at quadrature points.
///   NodalInterpolant: the approximant is replaced by its P1 interpolant.
enum class ErrorMeasure { Quadrature, NodalInterpolant };

struct DifferenceNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double h1() const;
};

DifferenceNorms difference_norms(const ScalarField& field, const FieldFn& approximant,
                                 const ElementFilter& filter = {}, ErrorMeasure measure = ErrorMeasure::Quadrature,
                                 int degree = 4);

/// Integral of the field over the vertical line x = x0 and the length of
/// that line inside the mesh.
struct LineIntegral {
  double integral = 0.0;
  double length = 0.0;
};

LineIntegral vertical_line_integral(const ScalarField& field, double x0);

/// Integral of weight(p) * field over edges carrying `tag`.
double boundary_integral(const ScalarField& field, BoundaryTag tag, const ScalarFn& weight, int points = 3);
/// Integral of fn over edges carrying `tag`.
double boundary_integral(const Mesh& mesh, BoundaryTag tag, const ScalarFn& fn, int points = 3);

void write_field_csv(std::ostream& out, const ScalarField& field);

}  // namespace thincascade
