#include "thincascade/inner_joint.hpp"

#include <algorithm>
#include <cmath>

#include "thincascade/cutoff.hpp"
#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

const OmegaCoefficient& need_omega(const OmegaList& omegas, int k, int for_order) {
  auto it = omegas.find(k);
  if (it == omegas.end())
    throw SequencingError("inner problem of order " + std::to_string(for_order) + " needs omega_" + std::to_string(k));
  return it->second;
}

const RegularPair& need_regular(const RegularList& regulars, int k, int for_order) {
  auto it = regulars.find(k);
  if (it == regulars.end())
    throw SequencingError("inner problem of order " + std::to_string(for_order) + " needs u_" + std::to_string(k));
  return it->second;
}

AssemblyOptions inner_assembly() {
  AssemblyOptions opt;
  opt.load_degree = 5;
  opt.edge_points = 3;
  return opt;
}

}  // namespace

double default_inner_target_h(const CascadeGeometry& geom) { return geom.h_min() / 12.0; }

InnerDomain make_inner_domain(const CascadeGeometry& geom, double L, double target_h, MesherKind kind) {
  if (!(target_h > 0.0)) throw ParameterError("inner mesh size must be positive");
  auto outline = truncated_inner_outline(geom, L);
  auto mesh = std::make_shared<const Mesh>(triangulate(outline, target_h, kind));
  InnerDomain d{geom, L, std::move(outline), mesh, nullptr};
  d.locator = std::make_shared<const PointLocator>(*mesh);
  return d;
}

InnerDomain make_inner_domain(std::shared_ptr<const Mesh> mesh, const CascadeGeometry& geom, double L) {
  InnerDomain d{geom, L, truncated_inner_outline(geom, L), std::move(mesh), nullptr};
  d.locator = std::make_shared<const PointLocator>(*d.mesh);
  return d;
}

InnerDomain InnerDomain::refined() const {
  return make_inner_domain(std::make_shared<const Mesh>(refine_uniform(*mesh)), geom, L);
}

double cross_section_mean(const ScalarField& field, double x0) {
  const auto line = vertical_line_integral(field, x0);
  if (!(line.length > 0.0)) throw DomainError("cross-section at " + std::to_string(x0) + " misses the mesh");
  return line.integral / line.length;
}

JointCharacteristics solve_frak_N0(const InnerDomain& domain, const SolverOptions& options) {
  const double h1 = domain.geom.h1, h2 = domain.geom.h2, L = domain.L;
  std::map<BoundaryTag, ScalarFn> flux{{BoundaryTag::TruncLeft, [h1](Point) { return -1.0 / h1; }},
                                       {BoundaryTag::TruncRight, [h2](Point) { return 1.0 / h2; }}};
  const auto sys = assemble_mixed_poisson(domain.mesh, [](Point) { return 0.0; }, flux, {}, {}, inner_assembly());
  JointCharacteristics out;
  out.field_N0 = solve_system(sys, options, &out.stats);
  const double shift = -L / h1 - cross_section_mean(out.field_N0, -L);
  for (double& v : out.field_N0.values) v += shift;
  const double ml = cross_section_mean(out.field_N0, -L), ml1 = cross_section_mean(out.field_N0, -L + 1.0);
  const double mr = cross_section_mean(out.field_N0, L), mr1 = cross_section_mean(out.field_N0, L - 1.0);
  out.slope_left = ml1 - ml;
  out.slope_right = mr - mr1;
  out.C0 = mr - L / h2;
  return out;
}

XiEtaPolynomial far_field_psi(int k, int branch, const OmegaList& omegas, const RegularList& regulars) {
  XiEtaPolynomial psi;
  if (k <= 0) return psi;
  const auto& w_next = need_omega(omegas, k + 1, k);
  if (!w_next.branch[static_cast<std::size_t>(branch - 1)].is_zero()) psi.add(1, 0, w_next.derivative(branch, 1, 0.0));
  if (k >= 2) {
    const auto& w2 = need_omega(omegas, 2, k);
    if (!w2.branch[static_cast<std::size_t>(branch - 1)].is_zero())
      psi.add(k, 0, w2.derivative(branch, k, 0.0) / factorial(k));
  }
  for (int j = 0; j <= k - 2; ++j) {
    const auto& u = need_regular(regulars, k - j, k)[static_cast<std::size_t>(branch - 1)];
    if (u.is_zero()) continue;
    const auto c = u.field.at_x(0.0, j);
    for (std::size_t b = 0; b < c.size(); ++b) psi.add(j, static_cast<int>(b), c[b] / factorial(j));
  }
  return psi;
}

InnerForcing inner_data_k(int k, const ProblemData& data, const CascadeGeometry& geom, const OmegaList& omegas,
                          const RegularList& regulars) {
  if (k < 0) throw ParameterError("inner order must be >= 0");
  InnerForcing out;
  out.order = k;
  out.l = geom.l;
  for (int i = 1; i <= 2; ++i) {
    const auto s = static_cast<std::size_t>(i - 1);
    out.psi[s] = far_field_psi(k, i, omegas, regulars);
    out.psi_xi[s] = out.psi[s].derivative_xi();
    out.psi_eta[s] = out.psi[s].derivative_eta();
  }
  if (k >= 2) {
    const int m = k - 2;
    const auto c = data.f.at_x(0.0, m);
    for (std::size_t b = 0; b < c.size(); ++b) out.F.add(m, static_cast<int>(b), c[b] / factorial(m));
    for (int i = 1; i <= 2; ++i) {
      const auto s = static_cast<std::size_t>(i - 1);
      const auto& pp = data.phi(i, +1);
      const auto& pm = data.phi(i, -1);
      out.b_plus[s] = pp.is_zero() ? 0.0 : pp.derivative(m, 0.0) / factorial(m);
      out.b_minus[s] = pm.is_zero() ? 0.0 : pm.derivative(m, 0.0) / factorial(m);
    }
  }
  return out;
}

double InnerForcing::volume(Point p) const {
  const double xi = p.x, eta = p.y;
  const double Fk = F.eval(xi, eta);
  double v = Fk;
  for (int i = 1; i <= 2; ++i) {
    const auto chi = inner_cutoff(i, xi, l);
    if (chi.value == 0.0 && chi.d1 == 0.0) continue;
    const auto s = static_cast<std::size_t>(i - 1);
    v += psi[s].eval(xi, eta) * chi.d2 + 2.0 * psi_xi[s].eval(xi, eta) * chi.d1 - Fk * chi.value;
  }
  return v;
}

double InnerForcing::wall_data(int branch, int sign, double xi) const {
  if (order < 2) return 0.0;
  const auto s = static_cast<std::size_t>(branch - 1);
  const double b = sign > 0 ? b_plus[s] : b_minus[s];
  if (b == 0.0) return 0.0;
  return b * std::pow(xi, order - 2) * (1.0 - inner_cutoff(branch, xi, l).value);
}

std::map<BoundaryTag, ScalarFn> InnerForcing::neumann_data() const {
  std::map<BoundaryTag, ScalarFn> g;
  const std::array<std::tuple<BoundaryTag, int, int>, 4> walls{{{BoundaryTag::NeumannTop1, 1, +1},
                                                                {BoundaryTag::NeumannBottom1, 1, -1},
                                                                {BoundaryTag::NeumannTop2, 2, +1},
                                                                {BoundaryTag::NeumannBottom2, 2, -1}}};
  for (const auto& [tag, branch, sign] : walls) {
    const double b = sign > 0 ? b_plus[static_cast<std::size_t>(branch - 1)] : b_minus[static_cast<std::size_t>(branch - 1)];
    if (order < 2 || b == 0.0) continue;
    const InnerForcing* self = this;
    g[tag] = [self, branch, sign](Point p) { return -sign * self->wall_data(branch, sign, p.x); };
  }
  return g;
}

bool InnerForcing::is_zero() const {
  return psi[0].is_zero() && psi[1].is_zero() && F.is_zero() && b_plus[0] == 0.0 && b_plus[1] == 0.0 &&
         b_minus[0] == 0.0 && b_minus[1] == 0.0;
}

InnerCorrector solve_inner_k(const InnerForcing& forcing, const InnerDomain& domain, const SolverOptions& options) {
  InnerCorrector out;
  out.order = forcing.order;
  out.forcing = forcing;
  if (forcing.support_radius() > domain.L - 1.0)
    throw ParameterError("truncation length too short for the inner forcing support");
  if (forcing.is_zero()) {
    out.field = ScalarField(domain.mesh, std::vector<double>(domain.mesh->num_vertices(), 0.0));
    return out;
  }
  const InnerForcing& f = out.forcing;
  const auto sys = assemble_mixed_poisson(domain.mesh, [&f](Point p) { return f.volume(p); }, f.neumann_data(), {}, {},
                                          inner_assembly());
  out.compatibility_defect = sys.compatibility_defect;
  if (std::abs(sys.compatibility_defect) > 1e-4)
    throw ConsistencyError("inner problem of order " + std::to_string(forcing.order) +
                           " violates the solvability condition by " + std::to_string(sys.compatibility_defect) +
                           "; the limit coefficients upstream are inconsistent");
  out.field = solve_system(sys, options, &out.stats);
  const double L = domain.L;
  const double shift = cross_section_mean(out.field, -L);
  for (double& v : out.field.values) v -= shift;
  out.delta_plus = cross_section_mean(out.field, L);
  out.flatness = std::max(std::abs(cross_section_mean(out.field, -L + 1.0)),
                          std::abs(cross_section_mean(out.field, L - 1.0) - out.delta_plus));
  return out;
}

double delta_plus_formula_check(const InnerCorrector& corrector, const InnerDomain& domain) {
  const InnerForcing& f = corrector.forcing;
  if (f.is_zero()) return 0.0;
  const Mesh& mesh = *domain.mesh;
  const double vol = integrate_function(mesh, [&f](Point p) { return p.x * f.volume(p); }, {}, 8);
  double walls = 0.0;
  const std::array<std::tuple<BoundaryTag, int, int>, 4> tags{{{BoundaryTag::NeumannTop1, 1, +1},
                                                               {BoundaryTag::NeumannBottom1, 1, -1},
                                                               {BoundaryTag::NeumannTop2, 2, +1},
                                                               {BoundaryTag::NeumannBottom2, 2, -1}}};
  for (const auto& [tag, branch, sign] : tags)
    walls += sign * boundary_integral(mesh, tag, [&f, branch, sign](Point p) { return p.x * f.wall_data(branch, sign, p.x); }, 4);
  double gamma = 0.0;
  const auto& v = corrector.field.values;
  for (const auto& e : mesh.boundary_edges) {
    if (e.tag != BoundaryTag::Gamma) continue;
    const Point a = mesh.vertices[e.v[0]], b = mesh.vertices[e.v[1]];
    const Point d = b - a;
    const double len = std::hypot(d.x, d.y);
    Point n{d.y / len, -d.x / len};
    const Point probe = 0.5 * (a + b) + (1e-6 * len) * n;
    if (domain.outline.contains(probe)) n = -1.0 * n;
    gamma += n.x * len * 0.5 * (v[static_cast<std::size_t>(e.v[0])] + v[static_cast<std::size_t>(e.v[1])]);
  }
  return (vol - walls - gamma) / domain.geom.h2;
}

ValueGrad InnerTerm::eval(Point p) const {
  ValueGrad out;
  out.value = constant;
  if (!corrector) return out;
  const auto loc = domain->locator->find(p, 1e-6);
  out.value += corrector->field.eval_in(loc);
  out.grad = corrector->field.gradient_in(loc.triangle);
  const InnerForcing& f = corrector->forcing;
  for (int i = 1; i <= 2; ++i) {
    const auto chi = inner_cutoff(i, p.x, f.l);
    if (chi.value == 0.0 && chi.d1 == 0.0) continue;
    const auto s = static_cast<std::size_t>(i - 1);
    const double psi = f.psi[s].eval(p.x, p.y);
    out.value += psi * chi.value;
    out.grad.x += f.psi_xi[s].eval(p.x, p.y) * chi.value + psi * chi.d1;
    out.grad.y += f.psi_eta[s].eval(p.x, p.y) * chi.value;
  }
  return out;
}

double symmetry_defect(const ScalarField& field, bool even) {
  const Mesh& mesh = *field.mesh;
  const PointLocator loc(mesh);
  const double scale = std::max(field.max_abs(), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    const Point p = mesh.vertices[i];
    const auto m = loc.locate({p.x, -p.y}, 1e-6);
    if (!m) continue;
    const double mirror = field.eval_in(*m);
    const double v = field.values[i];
    worst = std::max(worst, std::abs(even ? v - mirror : v + mirror));
  }
  return field.max_abs() == 0.0 ? 0.0 : worst / scale;
}

}  // namespace thincascade
