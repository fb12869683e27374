#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thincascade/verification.hpp"

namespace thincascade::cli {

/// Validated run configuration.  Every field carries its default.
struct RunConfig {
  // [geometry]
  std::string geometry_preset = "widening";
  std::filesystem::path profile;  // joint profile file, overrides the preset joint
  std::string inline_profile;     // "xi upper lower; ..." triples, overrides the preset joint
  double h1 = 1.0;
  double h2 = 1.0;
  double l = 1.0;

  // [problem]
  std::string problem = "TP1";
  int derivative_order = -1;  // -1: as provided by the preset
  int m = 1;
  double alpha = 0.75;
  double delta_end = 0.25;
  double L = 0.0;        // 0: default truncation length
  double inner_h = 0.0;  // 0: default inner mesh size
  int fourier_terms = 32;

  // [study]
  std::vector<double> eps{0.2, 0.141, 0.1, 0.0707, 0.05};
  int n_across = 16;
  bool self_check = true;
  std::string mesher = "auto";
  std::vector<std::string> cases{"c1", "c2", "c3", "c4", "c5", "c6"};
  double sample_eps = 0.1;  // eps of the `reference` and `composite` exports
  bool svg = true;
  std::string command = "all";
  std::filesystem::path output = "out";
  int jobs = 0;

  CascadeGeometry geometry() const;
  ProblemData problem_data() const;
  CutoffSpec cutoff() const;
  PipelineOptions pipeline_options() const;
  ReferenceOptions reference_options() const;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"limit", "inner", "reference", "composite", "study", "all"};
  return names;
}

/// Parses `[geometry]`, `[problem]` and `[study]` sections of key = value
/// lines ('#' starts a comment).  Relative profile paths resolve
/// against `base_dir`.  Throws ConfigError for syntax errors, unknown keys
/// and out-of-range values, FileError for a missing profile file.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a file; FileError when it cannot be opened.
RunConfig load_config(const std::filesystem::path& path);

/// The configuration with all defaults filled, in parseable form.
std::string echo_config(const RunConfig& cfg);

/// Re-runs the range checks (used after command-line overrides).
void validate(const RunConfig& cfg);

}  // namespace thincascade::cli
