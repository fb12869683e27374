#include "thincascade/cli/run_command.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <thread>

#include "thincascade/acceptance.hpp"
#include "thincascade/errors.hpp"

namespace thincascade::cli {

namespace fs = std::filesystem;

namespace {

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  const auto tag = [&](const Error& e) { return "stage " + name + ": " + e.what(); };
  try {
    return fn();
  } catch (const SequencingError& e) {
    throw SequencingError(tag(e));
  } catch (const CapabilityError& e) {
    throw CapabilityError(tag(e));
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(tag(e));
  } catch (const SolverError& e) {
    throw SolverError(tag(e), e.residual_history);
  } catch (const MeshingError& e) {
    throw MeshingError(tag(e));
  } catch (const ParameterError& e) {
    throw ParameterError(tag(e));
  } catch (const GeometryError& e) {
    throw GeometryError(tag(e));
  }
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name, std::ostream& log) {
  const fs::path path = cfg.output / name;
  std::ofstream out(path);
  if (!out) throw FileError("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  log << "wrote " << path.string() << '\n';
  return out;
}

int jobs_of(const RunConfig& cfg) {
  return cfg.jobs > 0 ? cfg.jobs : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

std::shared_ptr<const Pipeline> pipeline(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom) {
  return stage("pipeline", [&] { return std::make_shared<const Pipeline>(run_pipeline(data, geom, cfg.pipeline_options())); });
}

int cmd_limit(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom, std::ostream& log) {
  const auto p = pipeline(cfg, data, geom);
  auto out = open_out(cfg, "limit.csv", log);
  out << "branch,x";
  for (const auto& [k, w] : p->omega) out << ",omega_" << k << ",domega_" << k;
  out << '\n';
  constexpr int n = 100;
  for (int branch = 1; branch <= 2; ++branch)
    for (int j = 0; j <= n; ++j) {
      const double x = branch == 1 ? -1.0 + static_cast<double>(j) / n : static_cast<double>(j) / n;
      out << branch << ',' << x;
      for (const auto& [k, w] : p->omega) out << ',' << w.value(branch, x) << ',' << w.derivative(branch, 1, x);
      out << '\n';
    }
  auto consts = open_out(cfg, "limit_constants.csv", log);
  consts << "name,order,value\n";
  for (const auto& [k, d] : p->constants.d_star) consts << "d_star," << k << ',' << d << '\n';
  for (const auto& [k, d] : p->constants.delta_plus) consts << "delta_plus," << k << ',' << d << '\n';
  return 0;
}

int cmd_inner(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom, std::ostream& log) {
  const auto p = pipeline(cfg, data, geom);
  const auto n0 = stage("solve_frak_N0", [&] { return solve_frak_N0(*p->inner, cfg.pipeline_options().solver); });
  {
    auto out = open_out(cfg, "inner_N0.csv", log);
    write_field_csv(out, n0.field_N0);
  }
  auto consts = open_out(cfg, "inner_constants.csv", log);
  consts << "name,order,value\n";
  consts << "C0,0," << n0.C0 << '\n';
  consts << "slope_left,0," << n0.slope_left << '\n';
  consts << "slope_right,0," << n0.slope_right << '\n';
  for (const auto& [k, corr] : p->correctors) {
    auto out = open_out(cfg, "inner_N" + std::to_string(k) + ".csv", log);
    write_field_csv(out, corr->field);
    consts << "delta_plus," << k << ',' << corr->delta_plus << '\n';
    consts << "delta_plus_formula," << k << ',' << delta_plus_formula_check(*corr, *p->inner) << '\n';
    consts << "compatibility_defect," << k << ',' << corr->compatibility_defect << '\n';
    consts << "flatness," << k << ',' << corr->flatness << '\n';
  }
  log << "C0 = " << n0.C0 << '\n';
  return 0;
}

int cmd_reference(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom, std::ostream& log) {
  const auto ref = stage("reference_solve", [&] {
    return reference_solve(data, geom, cfg.sample_eps, cfg.reference_options(), cfg.cutoff());
  });
  auto out = open_out(cfg, "reference.csv", log);
  write_field_csv(out, ref.best());
  log << "reference eps = " << cfg.sample_eps << ", vertices " << ref.best().mesh->num_vertices() << ", CG iterations "
      << (ref.fine.mesh ? ref.fine_stats.iterations : ref.coarse_stats.iterations) << '\n';
  return 0;
}

int cmd_composite(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom, std::ostream& log) {
  const auto p = pipeline(cfg, data, geom);
  const auto U = stage("assemble_composite", [&] { return assemble_composite(cfg.m, cfg.sample_eps, p, cfg.cutoff()); });
  const double eps = cfg.sample_eps;
  const auto outline = scaled_outline(geom, eps, 0.5, cutoff_marks(geom, eps, cfg.cutoff()));
  const Mesh mesh = stage("mesh", [&] {
    return triangulate(outline, eps * geom.h_min() / cfg.n_across, cfg.reference_options().mesher);
  });
  auto out = open_out(cfg, "composite.csv", log);
  out << "vertex_index,x,y,value,dx,dy\n";
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    const Point q = mesh.vertices[i];
    const auto v = composite_eval(U, q);
    out << i << ',' << q.x << ',' << q.y << ',' << v.value << ',' << v.grad.x << ',' << v.grad.y << '\n';
  }
  return 0;
}

StudyCase case_by_id(const RunConfig& cfg, const std::string& id) {
  StudyCase s;
  s.id = id;
  s.eps = cfg.eps;
  s.m = cfg.m;
  s.cutoff = cfg.cutoff();
  const double a = cfg.alpha;
  if (id == "c1") {
    s.approximant = Approximant::Omega2;
    s.expected = 1.0;
  } else if (id == "c2") {
    s.approximant = Approximant::Omega2PlusOmega3;
    s.region = "thin_rectangles";
    s.expected = 1.5;
  } else if (id == "c3") {
    s.approximant = Approximant::AverageOmega2;
    s.norm = NormKind::Max;
    s.expected = 1.0;
  } else if (id == "c4") {
    s.approximant = Approximant::AverageOmega23;
    s.norm = NormKind::Max;
    s.expected = 1.5 * a;
  } else if (id == "c5") {
    s.approximant = Approximant::JointN1;
    s.region = "joint";
    s.expected = 1.5 * a + 0.5;
  } else {
    s.approximant = Approximant::Composite;
    s.expected = a * (2.0 * cfg.m - 0.5) + 0.5;
  }
  return s;
}

int cmd_study(const RunConfig& cfg, const ProblemData& data, const CascadeGeometry& geom, std::ostream& log) {
  const auto p = pipeline(cfg, data, geom);
  const int jobs = jobs_of(cfg);
  ReferenceSet refs;
  stage("reference_solve", [&] {
    fill_references(refs, data, geom, cfg.eps, cfg.reference_options(), cfg.cutoff(), jobs);
    return 0;
  });
  std::vector<ErrorReport> reports;
  for (const auto& id : cfg.cases)
    reports.push_back(stage("convergence_study", [&] { return convergence_study(case_by_id(cfg, id), p, refs, jobs); }));
  {
    auto out = open_out(cfg, "report.csv", log);
    write_report_csv_header(out);
    for (const auto& r : reports) write_report_csv(out, r);
  }
  if (cfg.svg) {
    auto out = open_out(cfg, "report.svg", log);
    write_report_svg(out, reports);
  }
  bool fail = false, inconclusive = false;
  for (const auto& r : reports) {
    log << r.study.id << ": " << to_string(r.verdict);
    if (r.fit.points >= 3) log << "  slope " << r.fit.slope << " (expected " << r.study.expected << ")";
    if (r.all_zero) log << "  all errors zero";
    log << '\n';
    fail = fail || r.verdict == Verdict::Fail;
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
  }
  return fail ? 1 : inconclusive ? 2 : 0;
}

int cmd_all(const RunConfig& cfg, std::ostream& log) {
  AcceptanceOptions opt;
  opt.geometry = stage("geometry", [&] { return cfg.geometry(); });
  opt.eps = cfg.eps;
  opt.cutoff = cfg.cutoff();
  opt.reference = cfg.reference_options();
  opt.pipeline = cfg.pipeline_options();
  opt.jobs = jobs_of(cfg);
  std::ofstream details;
  {
    auto f = open_out(cfg, "acceptance_log.txt", log);
    details = std::move(f);
  }
  const auto result = run_acceptance(opt, &details);
  {
    auto out = open_out(cfg, "acceptance.txt", log);
    print_acceptance(out, result);
  }
  {
    auto out = open_out(cfg, "report.csv", log);
    write_report_csv_header(out);
    for (const auto& r : result.reports) write_report_csv(out, r);
  }
  if (cfg.svg) {
    auto out = open_out(cfg, "report.svg", log);
    write_report_svg(out, result.reports);
  }
  print_acceptance(log, result);
  return exit_code(result.overall());
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) throw FileError("cannot create output directory '" + cfg.output.string() + "': " + ec.message());
  {
    std::ofstream echo(cfg.output / "config.echo.ini");
    echo << echo_config(cfg);
  }
  if (cfg.command == "all") return cmd_all(cfg, log);
  const auto geom = stage("geometry", [&] { return cfg.geometry(); });
  const auto data = cfg.problem_data();
  if (cfg.command == "limit") return cmd_limit(cfg, data, geom, log);
  if (cfg.command == "inner") return cmd_inner(cfg, data, geom, log);
  if (cfg.command == "reference") return cmd_reference(cfg, data, geom, log);
  if (cfg.command == "composite") return cmd_composite(cfg, data, geom, log);
  return cmd_study(cfg, data, geom, log);
}

}  // namespace thincascade::cli
