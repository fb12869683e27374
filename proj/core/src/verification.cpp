#include "thincascade/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> sample_branch(const CascadeGeometry& geom, double eps, const CutoffSpec& spec, int branch, int n) {
  const double cut = 2.0 * geom.l * std::pow(eps, spec.alpha);
  std::vector<double> xs;
  for (int j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / (n - 1);
    xs.push_back(branch == 1 ? -1.0 + t * (1.0 - cut) : cut + t * (1.0 - cut));
  }
  return xs;
}

FieldFn approximant_fn(const StudyCase& study, const std::shared_ptr<const Pipeline>& p, double eps) {
  switch (study.approximant) {
    case Approximant::Omega2:
    case Approximant::AverageOmega2:
      return [p, eps](Point q) { return omega_partial_sum(p->omega, eps, 0, q.x); };
    case Approximant::Omega2PlusOmega3:
    case Approximant::AverageOmega23:
      return [p, eps](Point q) { return omega_partial_sum(p->omega, eps, 1, q.x); };
    case Approximant::JointN1: {
      const InnerTerm n0 = p->inner_term(0), n1 = p->inner_term(1);
      return [n0, n1, eps](Point q) {
        const Point z{q.x / eps, q.y / eps};
        const auto a = n0.eval(z), b = n1.eval(z);
        ValueGrad out;
        out.value = a.value + eps * b.value;
        out.grad = b.grad;
        return out;
      };
    }
    case Approximant::Composite: {
      auto U = std::make_shared<const CompositeApproximation>(assemble_composite(study.m, eps, p, study.cutoff));
      return [U](Point q) { return composite_eval(*U, q); };
    }
  }
  throw ParameterError("unknown approximant");
}

bool is_average(Approximant a) { return a == Approximant::AverageOmega2 || a == Approximant::AverageOmega23; }

}  // namespace

std::vector<double> cutoff_marks(const CascadeGeometry& geom, double eps, const CutoffSpec& spec) {
  const double l = geom.l, a = std::pow(eps, spec.alpha), d = spec.delta_end;
  std::vector<double> m{l * a, 2 * l * a, eps * (1 + l / 2), eps * (2 + l / 2), eps * l};
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m.push_back(-m[i]);
  for (double v : {-1 + d, -1 + 2 * d, 1 - d, 1 - 2 * d}) m.push_back(v);
  std::sort(m.begin(), m.end());
  return m;
}

ReferenceSolution reference_solve(const ProblemData& data, const CascadeGeometry& geom, double eps,
                                  const ReferenceOptions& options, const CutoffSpec& spec) {
  if (options.n_across < 3) throw ParameterError("reference mesh needs at least 3 elements across");
  ReferenceSolution ref;
  ref.eps = eps;
  ref.target_h = eps * geom.h_min() / options.n_across;
  const auto outline = scaled_outline(geom, eps, 0.5, cutoff_marks(geom, eps, spec));
  auto mesh = std::make_shared<const Mesh>(triangulate(outline, ref.target_h, options.mesher));

  const ScalarFn f = [&data, eps](Point p) { return data.f_value(p.x, p.y / eps); };
  std::map<BoundaryTag, ScalarFn> g;
  const std::array<std::tuple<BoundaryTag, int, int>, 4> walls{{{BoundaryTag::NeumannTop1, 1, +1},
                                                                {BoundaryTag::NeumannBottom1, 1, -1},
                                                                {BoundaryTag::NeumannTop2, 2, +1},
                                                                {BoundaryTag::NeumannBottom2, 2, -1}}};
  for (const auto& [tag, branch, sign] : walls) {
    const SmoothFn& phi = data.phi(branch, sign);
    if (phi.is_zero()) continue;
    g[tag] = [phi, eps, s = sign](Point p) { return -s * eps * phi(p.x); };
  }
  const std::set<BoundaryTag> dirichlet{BoundaryTag::DirichletLeft, BoundaryTag::DirichletRight};
  AssemblyOptions asm_opt;
  asm_opt.load_degree = 4;
  ref.coarse = solve_system(assemble_mixed_poisson(mesh, f, g, dirichlet, {}, asm_opt), options.solver, &ref.coarse_stats);
  if (options.self_check) {
    auto fine = std::make_shared<const Mesh>(refine_uniform(*mesh));
    ref.fine = solve_system(assemble_mixed_poisson(fine, f, g, dirichlet, {}, asm_opt), options.solver, &ref.fine_stats);
    ref.coarse_locator = std::make_shared<const PointLocator>(*mesh);
  }
  return ref;
}

ElementFilter region_filter(const Region& region) {
  return [region](Point c) { return region.contains_x(c.x); };
}

DifferenceNorms error_norms(const ScalarField& reference, const FieldFn& approximant, const Region& region,
                            ErrorMeasure measure) {
  const auto filter = region_filter(region);
  if (!(filtered_area(*reference.mesh, filter) > 0.0)) throw ParameterError("region '" + region.name + "' is empty");
  return difference_norms(reference, approximant, filter, measure);
}

DifferenceNorms self_error_norms(const ReferenceSolution& ref, const Region& region, ErrorMeasure measure) {
  if (!ref.fine.mesh) return {};
  const auto filter = region_filter(region);
  if (measure == ErrorMeasure::NodalInterpolant) {
    // Coarse vertices keep their indices in the refined mesh.
    std::vector<double> diff(ref.coarse.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ref.fine.values[i] - ref.coarse.values[i];
    const ScalarField d(ref.coarse.mesh, std::move(diff));
    return {l2_norm(d, filter), h1_seminorm(d, filter)};
  }
  const Mesh& fm = *ref.fine.mesh;
  std::vector<double> diff(fm.num_vertices());
  for (std::size_t i = 0; i < fm.num_vertices(); ++i)
    diff[i] = ref.fine.values[i] - ref.coarse.eval_in(ref.coarse_locator->find(fm.vertices[i], 1e-6));
  const ScalarField d(ref.fine.mesh, std::move(diff));
  return {l2_norm(d, filter), h1_seminorm(d, filter)};
}

std::vector<double> cross_section_average(const ScalarField& field, const CascadeGeometry& geom, double eps, int branch,
                                          const std::vector<double>& xs) {
  const double h = geom.branch_width(branch);
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const bool inside = branch == 1 ? (x >= -1.0 && x < -eps * geom.l / 2) : (x > eps * geom.l / 2 && x <= 1.0);
    if (!inside) throw ParameterError("x = " + std::to_string(x) + " is outside branch " + std::to_string(branch));
    out.push_back(vertical_line_integral(field, x).integral / (eps * h));
  }
  return out;
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& errors) {
  if (eps.size() != errors.size()) throw ParameterError("rate fit: size mismatch");
  RateFit fit;
  fit.points = static_cast<int>(eps.size());
  if (fit.points < 3) throw ParameterError("rate fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = fit.points;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(errors[i] > 0.0) || !(eps[i] > 0.0)) throw ParameterError("rate fit needs positive values");
    const double x = std::log(eps[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double r = std::log(errors[i]) - fit.intercept - fit.slope * std::log(eps[i]);
    ss += r * r;
  }
  fit.slope_stderr = fit.points > 2 ? std::sqrt(ss / (n - 2) * n / den) : 0.0;
  return fit;
}

std::string_view to_string(Approximant a) {
  switch (a) {
    case Approximant::Omega2: return "omega2";
    case Approximant::Omega2PlusOmega3: return "omega2+eps*omega3";
    case Approximant::JointN1: return "N0+eps*N1";
    case Approximant::Composite: return "composite";
    case Approximant::AverageOmega2: return "E-omega2";
    case Approximant::AverageOmega23: return "E-omega2-eps*omega3";
  }
  return "?";
}

std::string_view to_string(NormKind n) {
  switch (n) {
    case NormKind::L2: return "L2";
    case NormKind::H1: return "H1";
    case NormKind::Max: return "max";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

void fill_references(ReferenceSet& refs, const ProblemData& data, const CascadeGeometry& geom,
                     const std::vector<double>& eps, const ReferenceOptions& options, const CutoffSpec& spec,
                     int jobs) {
  std::vector<double> todo;
  for (double e : eps)
    if (!refs.count(e)) todo.push_back(e);
  std::vector<std::shared_ptr<const ReferenceSolution>> out(todo.size());
  parallel_for(todo.size(), jobs, [&](std::size_t i) {
    out[i] = std::make_shared<const ReferenceSolution>(reference_solve(data, geom, todo[i], options, spec));
  });
  for (std::size_t i = 0; i < todo.size(); ++i) refs[todo[i]] = out[i];
}

Region study_region(const std::string& name, const CascadeGeometry& geom, double eps, const CutoffSpec& spec) {
  if (name == "full") return Region::full();
  if (name == "thin_rectangles") return Region::thin_rectangles(eps, spec.alpha, geom.l);
  if (name == "joint") return Region::joint_neighbourhood(eps, geom.l);
  throw ParameterError("unknown region '" + name + "' (full, thin_rectangles, joint)");
}

StudyRow evaluate_case(const StudyCase& study, const std::shared_ptr<const Pipeline>& pipeline,
                       const ReferenceSolution& ref, double sample_eps) {
  StudyRow row;
  row.eps = ref.eps;
  row.target_h = ref.target_h;
  const double eps = ref.eps;
  const auto approx = approximant_fn(study, pipeline, eps);
  const CascadeGeometry& geom = pipeline->geom;
  if (is_average(study.approximant) || study.norm == NormKind::Max) {
    if (!is_average(study.approximant)) throw ParameterError("max norm is defined for cross-section averages only");
    for (int branch = 1; branch <= 2; ++branch) {
      const auto xs = sample_branch(geom, sample_eps > 0.0 ? sample_eps : eps, study.cutoff, branch, 41);
      const auto E = cross_section_average(ref.best(), geom, eps, branch, xs);
      std::vector<double> Ec;
      if (ref.fine.mesh) Ec = cross_section_average(ref.coarse, geom, eps, branch, xs);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        row.error = std::max(row.error, std::abs(E[j] - approx({xs[j], 0.0}).value));
        if (!Ec.empty()) row.self_error = std::max(row.self_error, std::abs(E[j] - Ec[j]));
      }
    }
  } else {
    const Region region = study_region(study.region, geom, eps, study.cutoff);
    const auto e = error_norms(ref.best(), approx, region, study.measure);
    const auto s = self_error_norms(ref, region, study.measure);
    row.error = study.norm == NormKind::L2 ? e.l2 : e.h1();
    row.self_error = study.norm == NormKind::L2 ? s.l2 : s.h1();
  }
  row.gated = row.self_error <= study.self_error_gate * row.error;
  return row;
}

ErrorReport convergence_study(const StudyCase& study, const std::shared_ptr<const Pipeline>& pipeline,
                              const ReferenceSet& refs, int jobs) {
  ErrorReport report;
  report.study = study;
  auto eps = study.eps;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (eps.size() < 3) throw ParameterError("study needs at least 3 eps values");
  for (double e : eps)
    if (!refs.count(e)) throw SequencingError("no reference solution for eps = " + std::to_string(e));
  report.rows.resize(eps.size());
  const double sample_eps = study.moving_window ? 0.0 : eps.front();
  parallel_for(eps.size(), jobs,
               [&](std::size_t i) { report.rows[i] = evaluate_case(study, pipeline, *refs.at(eps[i]), sample_eps); });

  report.all_zero = std::all_of(report.rows.begin(), report.rows.end(), [](const StudyRow& r) { return r.error <= 1e-12; });
  if (report.all_zero) {
    report.verdict = Verdict::Pass;
    return report;
  }
  std::vector<double> xs, ys;
  for (const auto& r : report.rows)
    if (r.gated && r.error > 0.0) {
      xs.push_back(r.eps);
      ys.push_back(r.error);
    }
  if (xs.size() < 3) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  report.fit = fit_rate(xs, ys);
  report.verdict = report.fit.slope >= study.expected - study.tolerance ? Verdict::Pass : Verdict::Fail;
  return report;
}

void write_report_csv_header(std::ostream& out) {
  out << "case_id,eps,target_h,region,norm,error,self_error,slope,expected,pass\n";
}

void write_report_csv(std::ostream& out, const ErrorReport& report) {
  const auto& s = report.study;
  const std::string region = is_average(s.approximant) ? "thin_branches" : s.region;
  for (const auto& r : report.rows) {
    std::ostringstream line;
    line << std::setprecision(10) << s.id << ',' << r.eps << ',' << r.target_h << ',' << region << ','
         << to_string(s.norm) << ',' << r.error << ',' << r.self_error << ',';
    if (report.fit.points >= 3) line << report.fit.slope;
    line << ',' << s.expected << ',' << to_string(report.verdict) << '\n';
    out << line.str();
  }
}

void write_report_svg(std::ostream& out, const std::vector<ErrorReport>& reports) {
  const double W = 640, H = 480, pad = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& rep : reports)
    for (const auto& r : rep.rows)
      if (r.error > 0.0) {
        xmin = std::min(xmin, std::log10(r.eps));
        xmax = std::max(xmax, std::log10(r.eps));
        ymin = std::min(ymin, std::log10(r.error));
        ymax = std::max(ymax, std::log10(r.error));
      }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">log10 eps</text>\n";
  out << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
      << ")\" text-anchor=\"middle\">log10 error</text>\n";
  if (xmax > xmin && ymax >= ymin) {
    if (ymax == ymin) ymax = ymin + 1.0;
    auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (W - 2 * pad); };
    auto py = [&](double y) { return H - pad - (y - ymin) / (ymax - ymin) * (H - 2 * pad); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t c = 0;
    for (const auto& rep : reports) {
      const char* col = colors[c++ % 6];
      out << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
      for (const auto& r : rep.rows)
        if (r.error > 0.0) out << px(std::log10(r.eps)) << ',' << py(std::log10(r.error)) << ' ';
      out << "\"/>\n";
      const auto& last = rep.rows.back();
      if (last.error > 0.0)
        out << "<text x=\"" << px(std::log10(last.eps)) + 4 << "\" y=\"" << py(std::log10(last.error))
            << "\" font-size=\"11\" fill=\"" << col << "\">" << rep.study.id << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace thincascade
