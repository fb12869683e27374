#pragma once

#include <map>
#include <memory>
#include <optional>

#include "thincascade/cutoff.hpp"
#include "thincascade/inner_joint.hpp"

namespace thincascade {

struct PipelineOptions {
  int m = 1;
  double L = 0.0;               // 0: default_truncation_length
  double inner_target_h = 0.0;  // 0: default_inner_target_h
  int fourier_terms = 32;
  MesherKind mesher = MesherKind::Auto;
  SolverOptions solver;
};

/// All coefficients of the expansion through order 2m, computed in
/// recursion order omega_2 -> N~_1 -> omega_3 -> N~_2 -> omega_4 -> ...
struct Pipeline {
  ProblemData data;
  CascadeGeometry geom;
  int m = 1;
  EffectiveLoad load;
  TransmissionConstants constants;
  OmegaList omega;                                   // 2 .. 2m+2
  RegularList u;                                     // 0 .. 2m
  std::map<int, std::array<FourierLayer, 2>> layers;  // even 2 .. 2m
  std::shared_ptr<const InnerDomain> inner;
  std::map<int, std::shared_ptr<const InnerCorrector>> correctors;  // 1 .. 2m

  /// omega_{k+2}^(1)(0), the constant of N_k.
  double inner_constant(int k) const;
  InnerTerm inner_term(int k) const;
};

/// Throws CapabilityError (naming compute_d_star) before any solve when
/// the data cannot supply the derivatives that order m needs.
Pipeline run_pipeline(const ProblemData& data, const CascadeGeometry& geom, const PipelineOptions& options = {});

enum class JointBlend { Cutoff, RegularOnly, InnerOnly };

struct CompositeApproximation {
  int m = 1;
  double eps = 0.1;
  CutoffSpec spec;
  std::shared_ptr<const Pipeline> parts;
  std::map<int, InnerTerm> N;  // 0 .. 2m

  const CascadeGeometry& geom() const { return parts->geom; }
};

/// Throws SequencingError naming the first absent order.
CompositeApproximation assemble_composite(int m, double eps, std::shared_ptr<const Pipeline> parts,
                                          const CutoffSpec& spec = {});

/// U_eps^(m)(x, y) and its gradient.  `blend` forces chi_l to 0 or 1.
ValueGrad composite_eval(const CompositeApproximation& U, Point p, JointBlend blend = JointBlend::Cutoff);

/// sum_k eps^k omega_{k+2}(x) for k <= order; gradient has no y part.
ValueGrad omega_partial_sum(const OmegaList& omega, double eps, int order, double x);

}  // namespace thincascade
