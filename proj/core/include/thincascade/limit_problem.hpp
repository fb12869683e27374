#pragma once

#include <array>
#include <map>

#include "thincascade/geometry.hpp"
#include "thincascade/problem.hpp"

namespace thincascade {

/// Effective 1D loads F^(i)(x) = int_{Upsilon_i} f d eta - phi_+^(i) + phi_-^(i).
struct EffectiveLoad {
  std::array<SmoothFn, 2> F;

  double operator()(int branch, double x) const { return F[static_cast<std::size_t>(branch - 1)](x); }
};

EffectiveLoad effective_rhs(const ProblemData& data, const CascadeGeometry& geom);

/// One order of the limit coefficients: omega^(1) on [-1, 0], omega^(2) on [0, 1].
struct OmegaCoefficient {
  int order = 0;
  std::array<SmoothFn, 2> branch;

  double value(int i, double x) const { return branch[static_cast<std::size_t>(i - 1)](x); }
  double derivative(int i, int k, double x) const { return branch[static_cast<std::size_t>(i - 1)].derivative(k, x); }
  /// Piecewise evaluation on [-1, 1]; x = 0 uses the left branch.
  double eval(double x) const { return x <= 0.0 ? value(1, x) : value(2, x); }
  double eval_dx(double x) const { return x <= 0.0 ? derivative(1, 1, x) : derivative(2, 1, x); }
  bool is_zero() const { return branch[0].is_zero() && branch[1].is_zero(); }
};

struct TransmissionConstants {
  std::map<int, double> d_star;
  std::map<int, double> delta_plus;
};

/// Direct solve of the two-interval transmission problem for omega_2.
OmegaCoefficient solve_omega2(const EffectiveLoad& load, const CascadeGeometry& geom);

/// The printed closed-form expressions for omega_2, kept as a diagnostic.
double printed_omega2(const EffectiveLoad& load, const CascadeGeometry& geom, int branch, double x);

/// Largest |printed - solved| over 201 samples per branch.
std::array<double, 2> printed_omega2_discrepancy(const EffectiveLoad& load, const CascadeGeometry& geom,
                                                 const OmegaCoefficient& omega2);

/// Flux jump constant d_k^* (d_2^* = 0).  Throws CapabilityError when the
/// data lack derivatives of order k - 3 at x = 0.
double compute_d_star(const ProblemData& data, const CascadeGeometry& geom, int k);

/// Integral of xi^m / m! * d^m f / dx^m (0, eta) over the rescaled joint.
double joint_moment(const ProblemData& data, const CascadeGeometry& geom, int m);

/// Affine omega_k, k >= 3, from d_k^* and delta_{k-2}^+.
OmegaCoefficient solve_omega_k(int k, const TransmissionConstants& constants, const CascadeGeometry& geom);

/// Residuals of the value and flux transmission conditions and of the end conditions.
struct TransmissionResidual {
  double value_jump = 0.0;
  double flux_jump = 0.0;
  double left_end = 0.0;
  double right_end = 0.0;
};

TransmissionResidual transmission_residual(const OmegaCoefficient& w, const CascadeGeometry& geom,
                                           double expected_value_jump = 0.0, double expected_flux_jump = 0.0);

}  // namespace thincascade
