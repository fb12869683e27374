#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "thincascade/verification.hpp"

namespace thincascade {

inline ReferenceOptions sixteen_across() {
  ReferenceOptions r;
  r.n_across = 16;
  return r;
}

struct AcceptanceOptions {
  CascadeGeometry geometry = geometry_presets::widening();
  std::vector<double> eps{0.2, 0.141, 0.1, 0.0707, 0.05};
  CutoffSpec cutoff;
  ReferenceOptions reference = sixteen_across();
  PipelineOptions pipeline;
  int jobs = 0;  // 0: hardware concurrency
};

struct CriterionResult {
  int id = 0;
  std::string title;
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
};

struct AcceptanceResult {
  std::vector<CriterionResult> criteria;
  std::vector<ErrorReport> reports;
  /// Fail if any criterion fails, else Inconclusive if any is, else Pass.
  Verdict overall() const;
};

/// Runs the eleven acceptance criteria.  Study tables and diagnostics go to
/// `log` when given.
AcceptanceResult run_acceptance(const AcceptanceOptions& options = {}, std::ostream* log = nullptr);

/// One line per criterion: `criterion N: PASS|FAIL|INCONCLUSIVE  title  detail`.
void print_acceptance(std::ostream& out, const AcceptanceResult& result);

/// 0 for Pass, 1 for Fail, 2 for Inconclusive.
int exit_code(Verdict v);

}  // namespace thincascade
