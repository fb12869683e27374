#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thincascade/composite.hpp"

namespace thincascade {

struct ReferenceOptions {
  int n_across = 8;  // elements across the thinnest branch
  bool self_check = true;
  MesherKind mesher = MesherKind::Auto;
  SolverOptions solver;
};

/// Full problem on Omega_eps: coarse solve and, with self_check, the solve on
/// the uniformly refined mesh.  Errors are measured against `fine` when it exists.
struct ReferenceSolution {
  double eps = 0.0;
  double target_h = 0.0;
  ScalarField coarse;
  ScalarField fine;
  SolveStats coarse_stats;
  SolveStats fine_stats;
  std::shared_ptr<const PointLocator> coarse_locator;

  const ScalarField& best() const { return fine.mesh ? fine : coarse; }
};

/// x positions where the composite cutoffs and inner ramps switch; used as
/// wall marks so mapped meshes align with them.
std::vector<double> cutoff_marks(const CascadeGeometry& geom, double eps, const CutoffSpec& spec);

ReferenceSolution reference_solve(const ProblemData& data, const CascadeGeometry& geom, double eps,
                                  const ReferenceOptions& options = {}, const CutoffSpec& spec = {});

ElementFilter region_filter(const Region& region);

/// Norms of reference - approximant over the region.  Throws ParameterError
/// for an empty region.
DifferenceNorms error_norms(const ScalarField& reference, const FieldFn& approximant, const Region& region,
                            ErrorMeasure measure = ErrorMeasure::NodalInterpolant);

/// Reference self-error over the region.  Quadrature: fine - prolonged
/// coarse on the fine mesh.  NodalInterpolant: coarse - restricted fine on
/// the coarse mesh, which bounds the discrete part u_h - I_h u that the
/// nodal measure keeps.
DifferenceNorms self_error_norms(const ReferenceSolution& ref, const Region& region,
                                 ErrorMeasure measure = ErrorMeasure::NodalInterpolant);

/// E_eps^(i)(u)(x) = (1 / (eps h_i)) int u(x, y) dy at each x.
std::vector<double> cross_section_average(const ScalarField& field, const CascadeGeometry& geom, double eps, int branch,
                                          const std::vector<double>& xs);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

/// Least-squares fit of log(error) against log(eps).
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& errors);

enum class Approximant { Omega2, Omega2PlusOmega3, JointN1, Composite, AverageOmega2, AverageOmega23 };
enum class NormKind { L2, H1, Max };

std::string_view to_string(Approximant a);
std::string_view to_string(NormKind n);

struct StudyCase {
  std::string id;
  Approximant approximant = Approximant::Omega2;
  NormKind norm = NormKind::H1;
  std::string region = "full";  // full | thin_rectangles | joint
  std::vector<double> eps{0.2, 0.141, 0.1, 0.0707, 0.05};
  double expected = 1.0;
  double tolerance = 0.25;
  double self_error_gate = 0.2;
  int m = 1;
  CutoffSpec cutoff;
  ErrorMeasure measure = ErrorMeasure::NodalInterpolant;
  /// Cross-section averages are sampled on I_{eps,alpha} of the largest eps
  /// of the list, the same x for every eps; true samples each eps's own interval.
  bool moving_window = false;
};

struct StudyRow {
  double eps = 0.0;
  double target_h = 0.0;
  double error = 0.0;
  double self_error = 0.0;
  bool gated = true;  // self_error within the gate
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

struct ErrorReport {
  StudyCase study;
  std::vector<StudyRow> rows;
  RateFit fit;
  Verdict verdict = Verdict::Inconclusive;
  bool all_zero = false;
};

/// Reference solutions keyed by eps, shared across studies of one problem.
using ReferenceSet = std::map<double, std::shared_ptr<const ReferenceSolution>>;

/// Solves the missing eps values of the list in parallel with `jobs` threads.
void fill_references(ReferenceSet& refs, const ProblemData& data, const CascadeGeometry& geom,
                     const std::vector<double>& eps, const ReferenceOptions& options, const CutoffSpec& spec,
                     int jobs);

Region study_region(const std::string& name, const CascadeGeometry& geom, double eps, const CutoffSpec& spec);

/// Error of one approximant against one reference.  Cross-section samples
/// lie on I_{sample_eps,alpha} (0: the reference eps).
StudyRow evaluate_case(const StudyCase& study, const std::shared_ptr<const Pipeline>& pipeline,
                       const ReferenceSolution& ref, double sample_eps = 0.0);

ErrorReport convergence_study(const StudyCase& study, const std::shared_ptr<const Pipeline>& pipeline,
                              const ReferenceSet& refs, int jobs = 1);

void write_report_csv_header(std::ostream& out);
void write_report_csv(std::ostream& out, const ErrorReport& report);
/// Static log-log plot of the rows of one or more reports.
void write_report_svg(std::ostream& out, const std::vector<ErrorReport>& reports);

}  // namespace thincascade
