#include "thincascade/fem.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <ostream>

#include <Eigen/SparseCholesky>

#include "thincascade/errors.hpp"
#include "thincascade/quadrature.hpp"

namespace thincascade {

namespace {

struct Element {
  std::array<Point, 3> p;
  std::array<Point, 3> grad;  // gradients of the barycentric coordinates
  double area;
};

Element element(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  Element e;
  for (int k = 0; k < 3; ++k) e.p[k] = mesh.vertices[tri[k]];
  const double det = cross(e.p[1] - e.p[0], e.p[2] - e.p[0]);
  e.area = 0.5 * det;
  for (int k = 0; k < 3; ++k) {
    const Point a = e.p[(k + 1) % 3], b = e.p[(k + 2) % 3];
    e.grad[k] = {(a.y - b.y) / det, (b.x - a.x) / det};
  }
  return e;
}

Point at(const Element& e, const std::array<double, 3>& l) {
  return {l[0] * e.p[0].x + l[1] * e.p[1].x + l[2] * e.p[2].x, l[0] * e.p[0].y + l[1] * e.p[1].y + l[2] * e.p[2].y};
}

bool selected(const ElementFilter& filter, const Mesh& mesh, std::size_t t) {
  return !filter || filter(mesh.centroid(t));
}

}  // namespace

ScalarField::ScalarField(std::shared_ptr<const Mesh> m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
  if (!mesh) throw ParameterError("field needs a mesh");
  if (values.size() != mesh->num_vertices()) throw ParameterError("field value count differs from vertex count");
  for (double x : values)
    if (!std::isfinite(x)) throw SolverError("field contains non-finite values", {});
}

double ScalarField::eval_in(const MeshLocation& loc) const {
  const auto& tri = mesh->triangles[static_cast<std::size_t>(loc.triangle)];
  return loc.bary[0] * values[tri[0]] + loc.bary[1] * values[tri[1]] + loc.bary[2] * values[tri[2]];
}

Point ScalarField::gradient_in(int triangle) const {
  const auto e = element(*mesh, static_cast<std::size_t>(triangle));
  const auto& tri = mesh->triangles[static_cast<std::size_t>(triangle)];
  Point g{};
  for (int k = 0; k < 3; ++k) g = g + values[tri[k]] * e.grad[k];
  return g;
}

double ScalarField::mean() const { return integrate(*this) / mesh->area(); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

ScalarField interpolate(std::shared_ptr<const Mesh> mesh, const ScalarFn& fn) {
  std::vector<double> v(mesh->num_vertices());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(mesh->vertices[i]);
  return ScalarField(std::move(mesh), std::move(v));
}

AssembledSystem assemble_mixed_poisson(std::shared_ptr<const Mesh> mesh_ptr, const ScalarFn& volumetric_load,
                                       const std::map<BoundaryTag, ScalarFn>& neumann_data,
                                       const std::set<BoundaryTag>& dirichlet_tags,
                                       const std::map<BoundaryTag, ScalarFn>& dirichlet_data,
                                       const AssemblyOptions& options) {
  if (!mesh_ptr) throw ParameterError("assembly needs a mesh");
  const Mesh& mesh = *mesh_ptr;
  const std::size_t n = mesh.num_vertices();
  for (const auto& [tag, fn] : neumann_data)
    if (dirichlet_tags.count(tag)) throw ParameterError("tag " + std::string(to_string(tag)) + " has both Dirichlet and Neumann data");

  AssembledSystem sys;
  sys.mesh = mesh_ptr;
  sys.lumped_mass.assign(n, 0.0);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.num_triangles());
  std::vector<double> load(n, 0.0);
  const auto& rule = triangle_rule(options.load_degree);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto e = element(mesh, t);
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      sys.lumped_mass[tri[i]] += e.area / 3.0;
      for (int j = 0; j < 3; ++j) trip.emplace_back(tri[i], tri[j], e.area * dot(e.grad[i], e.grad[j]));
    }
    if (volumetric_load) {
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const double fq = volumetric_load(at(e, rule.bary[q])) * rule.weights[q] * e.area;
        for (int i = 0; i < 3; ++i) load[tri[i]] += fq * rule.bary[q][i];
      }
    }
  }
  const auto line = gauss_legendre(options.edge_points);
  for (const auto& be : mesh.boundary_edges) {
    auto it = neumann_data.find(be.tag);
    if (it == neumann_data.end() || !it->second) continue;
    const Point a = mesh.vertices[be.v[0]], b = mesh.vertices[be.v[1]];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    for (std::size_t q = 0; q < line.nodes.size(); ++q) {
      const double s = line.nodes[q];
      const double g = it->second((1.0 - s) * a + s * b) * line.weights[q] * len;
      load[be.v[0]] += g * (1.0 - s);
      load[be.v[1]] += g * s;
    }
  }

  Eigen::SparseMatrix<double> K(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  K.setFromTriplets(trip.begin(), trip.end());

  sys.dof_of_vertex.assign(n, 0);
  sys.dirichlet_values.assign(n, 0.0);
  std::vector<char> fixed(n, 0);
  for (const auto& be : mesh.boundary_edges) {
    if (!dirichlet_tags.count(be.tag)) continue;
    auto it = dirichlet_data.find(be.tag);
    for (int v : be.v) {
      fixed[v] = 1;
      if (it != dirichlet_data.end() && it->second) sys.dirichlet_values[v] = it->second(mesh.vertices[v]);
    }
  }
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) sys.dof_of_vertex[i] = fixed[i] ? -1 : next++;
  const int dof = next;

  sys.load = Eigen::VectorXd::Zero(dof);
  for (std::size_t i = 0; i < n; ++i)
    if (sys.dof_of_vertex[i] >= 0) sys.load[sys.dof_of_vertex[i]] = load[i];
  std::vector<Eigen::Triplet<double>> reduced;
  reduced.reserve(static_cast<std::size_t>(K.nonZeros()));
  for (int col = 0; col < K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      const int r = sys.dof_of_vertex[static_cast<std::size_t>(it.row())];
      const int c = sys.dof_of_vertex[static_cast<std::size_t>(it.col())];
      if (r < 0) continue;
      if (c < 0) sys.load[r] -= it.value() * sys.dirichlet_values[static_cast<std::size_t>(it.col())];
      else reduced.emplace_back(r, c, it.value());
    }
  }
  sys.matrix.resize(dof, dof);
  sys.matrix.setFromTriplets(reduced.begin(), reduced.end());

  if (dof == static_cast<int>(n) && dirichlet_tags.empty()) {
    sys.zero_mean = true;
    double total_mass = 0.0;
    for (double m : sys.lumped_mass) total_mass += m;
    sys.compatibility_defect = sys.load.sum();
    for (std::size_t i = 0; i < n; ++i)
      sys.load[static_cast<Eigen::Index>(i)] -= sys.compatibility_defect * sys.lumped_mass[i] / total_mass;
  } else if (dof == static_cast<int>(n)) {
    throw ParameterError("Dirichlet tags requested but none present on the mesh");
  }
  return sys;
}

ScalarField solve_system(const AssembledSystem& sys, double tol, SolveStats* stats) {
  SolverOptions o;
  o.tol = tol;
  return solve_system(sys, o, stats);
}

ScalarField solve_system(const AssembledSystem& sys, const SolverOptions& options, SolveStats* stats) {
  if (!(options.tol >= 1e-14 && options.tol <= 1e-4))
    throw ParameterError("solver tolerance must lie in [1e-14, 1e-4]");
  const Eigen::Index dof = sys.matrix.rows();
  const std::size_t n = sys.mesh->num_vertices();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dof);
  SolveStats local;
  const double bnorm = sys.load.norm();

  if (bnorm > 0.0 && dof > 0) {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> apply_prec;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
    Eigen::VectorXd inv_diag;
    if (options.preconditioner == Preconditioner::Cholesky) {
      Eigen::SparseMatrix<double> P = sys.matrix;
      if (sys.zero_mean) {
        // Mass shift removes the constant null space from the factor only.
        double trk = 0.0, trm = 0.0;
        for (Eigen::Index i = 0; i < dof; ++i) {
          trk += sys.matrix.coeff(i, i);
          trm += sys.lumped_mass[static_cast<std::size_t>(i)];
        }
        const double tau = 1e-10 * trk / trm;
        for (Eigen::Index i = 0; i < dof; ++i) P.coeffRef(i, i) += tau * sys.lumped_mass[static_cast<std::size_t>(i)];
      }
      llt.compute(P);
      if (llt.info() != Eigen::Success) throw SolverError("Cholesky preconditioner factorization failed", {});
      apply_prec = [&llt](const Eigen::VectorXd& r) -> Eigen::VectorXd { return llt.solve(r); };
    } else {
      inv_diag = sys.matrix.diagonal().cwiseInverse();
      apply_prec = [&inv_diag](const Eigen::VectorXd& r) -> Eigen::VectorXd { return inv_diag.cwiseProduct(r); };
    }

    const int cap = options.max_iterations > 0
                        ? options.max_iterations
                        : std::max(10, static_cast<int>(50.0 * std::sqrt(static_cast<double>(dof))));
    Eigen::VectorXd r = sys.load;
    Eigen::VectorXd z = apply_prec(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    local.residual_history.push_back(1.0);
    bool converged = false;
    for (int it = 1; it <= cap; ++it) {
      const Eigen::VectorXd Ap = sys.matrix * p;
      const double alpha = rz / p.dot(Ap);
      x += alpha * p;
      r -= alpha * Ap;
      const double rel = r.norm() / bnorm;
      local.residual_history.push_back(rel);
      local.iterations = it;
      local.relative_residual = rel;
      if (rel <= options.tol) {
        converged = true;
        break;
      }
      z = apply_prec(r);
      const double rz_new = r.dot(z);
      p = z + (rz_new / rz) * p;
      rz = rz_new;
    }
    if (!converged)
      throw SolverError("conjugate gradients did not converge in " + std::to_string(cap) + " iterations",
                        local.residual_history);
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = sys.dof_of_vertex[i];
    values[i] = d >= 0 ? x[d] : sys.dirichlet_values[i];
  }
  if (sys.zero_mean) {
    double s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += sys.lumped_mass[i] * values[i];
      m += sys.lumped_mass[i];
    }
    for (double& v : values) v -= s / m;
  }
  if (stats) *stats = std::move(local);
  return ScalarField(sys.mesh, std::move(values));
}

double integrate(const ScalarField& field, const ElementFilter& filter) {
  const Mesh& mesh = *field.mesh;
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (!selected(filter, mesh, t)) continue;
    const auto& tri = mesh.triangles[t];
    s += mesh.triangle_area(t) * (field.values[tri[0]] + field.values[tri[1]] + field.values[tri[2]]) / 3.0;
  }
  return s;
}

double l2_norm(const ScalarField& field, const ElementFilter& filter) {
  const Mesh& mesh = *field.mesh;
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (!selected(filter, mesh, t)) continue;
    const auto& tri = mesh.triangles[t];
    const double a = field.values[tri[0]], b = field.values[tri[1]], c = field.values[tri[2]];
    s += mesh.triangle_area(t) * (a * a + b * b + c * c + a * b + b * c + c * a) / 6.0;
  }
  return std::sqrt(s);
}

double h1_seminorm(const ScalarField& field, const ElementFilter& filter) {
  const Mesh& mesh = *field.mesh;
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (!selected(filter, mesh, t)) continue;
    const Point g = field.gradient_in(static_cast<int>(t));
    s += mesh.triangle_area(t) * dot(g, g);
  }
  return std::sqrt(s);
}

double integrate_function(const Mesh& mesh, const ScalarFn& fn, const ElementFilter& filter, int degree) {
  const auto& rule = triangle_rule(degree);
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (!selected(filter, mesh, t)) continue;
    const auto e = element(mesh, t);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) s += rule.weights[q] * e.area * fn(at(e, rule.bary[q]));
  }
  return s;
}

double filtered_area(const Mesh& mesh, const ElementFilter& filter) {
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    if (selected(filter, mesh, t)) s += mesh.triangle_area(t);
  return s;
}

double DifferenceNorms::h1() const { return std::sqrt(l2 * l2 + h1_semi * h1_semi); }

DifferenceNorms difference_norms(const ScalarField& field, const FieldFn& approximant, const ElementFilter& filter,
                                 ErrorMeasure measure, int degree) {
  const Mesh& mesh = *field.mesh;
  std::vector<char> use(mesh.num_triangles(), 0);
  bool any = false;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    use[t] = selected(filter, mesh, t);
    any = any || use[t];
  }
  if (!any) throw ParameterError("error region selects no elements");

  double l2 = 0.0, h1 = 0.0;
  if (measure == ErrorMeasure::NodalInterpolant) {
    std::vector<double> diff(mesh.num_vertices(), 0.0);
    std::vector<char> done(mesh.num_vertices(), 0);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      if (!use[t]) continue;
      for (int v : mesh.triangles[t]) {
        if (done[v]) continue;
        done[v] = 1;
        diff[v] = field.values[v] - approximant(mesh.vertices[v]).value;
      }
    }
    ScalarField d(field.mesh, std::move(diff));
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      if (!use[t]) continue;
      const auto& tri = mesh.triangles[t];
      const double a = d.values[tri[0]], b = d.values[tri[1]], c = d.values[tri[2]];
      const double area = mesh.triangle_area(t);
      l2 += area * (a * a + b * b + c * c + a * b + b * c + c * a) / 6.0;
      const Point g = d.gradient_in(static_cast<int>(t));
      h1 += area * dot(g, g);
    }
  } else {
    const auto& rule = triangle_rule(degree);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      if (!use[t]) continue;
      const auto e = element(mesh, t);
      const auto& tri = mesh.triangles[t];
      const Point gh = field.gradient_in(static_cast<int>(t));
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const auto& l = rule.bary[q];
        const double uh = l[0] * field.values[tri[0]] + l[1] * field.values[tri[1]] + l[2] * field.values[tri[2]];
        const ValueGrad a = approximant(at(e, l));
        const Point dg = gh - a.grad;
        l2 += rule.weights[q] * e.area * (uh - a.value) * (uh - a.value);
        h1 += rule.weights[q] * e.area * dot(dg, dg);
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

LineIntegral vertical_line_integral(const ScalarField& field, double x0) {
  const Mesh& mesh = *field.mesh;
  double gx1 = -std::numeric_limits<double>::infinity();
  for (const auto& p : mesh.vertices) gx1 = std::max(gx1, p.x);
  LineIntegral out;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    double xa = mesh.vertices[tri[0]].x, xb = xa;
    for (int v : tri) {
      xa = std::min(xa, mesh.vertices[v].x);
      xb = std::max(xb, mesh.vertices[v].x);
    }
    const bool inside = (xa <= x0 && x0 < xb) || (x0 == gx1 && xb == x0 && xa < xb);
    if (!inside) continue;
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo, vlo = 0.0, vhi = 0.0;
    auto take = [&](double y, double v) {
      if (y < ylo) {
        ylo = y;
        vlo = v;
      }
      if (y > yhi) {
        yhi = y;
        vhi = v;
      }
    };
    for (int k = 0; k < 3; ++k) {
      const int i = tri[k], j = tri[(k + 1) % 3];
      const Point p = mesh.vertices[i], q = mesh.vertices[j];
      if (p.x == q.x) {
        if (p.x == x0) {
          take(p.y, field.values[i]);
          take(q.y, field.values[j]);
        }
        continue;
      }
      const double s = (x0 - p.x) / (q.x - p.x);
      if (s < 0.0 || s > 1.0) continue;
      take(p.y + s * (q.y - p.y), (1.0 - s) * field.values[i] + s * field.values[j]);
    }
    if (yhi > ylo) {
      out.integral += 0.5 * (vlo + vhi) * (yhi - ylo);
      out.length += yhi - ylo;
    }
  }
  if (out.length == 0.0) throw ParameterError("vertical line x = " + std::to_string(x0) + " misses the mesh");
  return out;
}

double boundary_integral(const ScalarField& field, BoundaryTag tag, const ScalarFn& weight, int points) {
  const Mesh& mesh = *field.mesh;
  const auto line = gauss_legendre(points);
  double s = 0.0;
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != tag) continue;
    const Point a = mesh.vertices[be.v[0]], b = mesh.vertices[be.v[1]];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    for (std::size_t q = 0; q < line.nodes.size(); ++q) {
      const double t = line.nodes[q];
      const double u = (1.0 - t) * field.values[be.v[0]] + t * field.values[be.v[1]];
      s += line.weights[q] * len * u * (weight ? weight((1.0 - t) * a + t * b) : 1.0);
    }
  }
  return s;
}

double boundary_integral(const Mesh& mesh, BoundaryTag tag, const ScalarFn& fn, int points) {
  const auto line = gauss_legendre(points);
  double s = 0.0;
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != tag) continue;
    const Point a = mesh.vertices[be.v[0]], b = mesh.vertices[be.v[1]];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    for (std::size_t q = 0; q < line.nodes.size(); ++q) {
      const double t = line.nodes[q];
      s += line.weights[q] * len * fn((1.0 - t) * a + t * b);
    }
  }
  return s;
}

void write_field_csv(std::ostream& out, const ScalarField& field) {
  out.precision(17);
  out << "vertex_index,x,y,value\n";
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const Point p = field.mesh->vertices[i];
    out << i << ',' << p.x << ',' << p.y << ',' << field.values[i] << '\n';
  }
}

}  // namespace thincascade
