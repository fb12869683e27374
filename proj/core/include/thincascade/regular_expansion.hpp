#pragma once

#include <array>

#include "thincascade/limit_problem.hpp"

namespace thincascade {

/// Cross-sectional corrector u_k^(i)(x, eta) on I_i x Upsilon_i.
struct RegularCoefficient {
  int order = 0;
  int branch = 1;
  EtaPolynomial field;

  double eval(double x, double eta) const { return field.eval(x, eta); }
  double d_x(double x, double eta) const { return field.eval(x, eta, 1, 0); }
  double d_eta(double x, double eta) const { return field.eval(x, eta, 0, 1); }
  bool is_zero() const { return field.is_zero(); }
};

using RegularPair = std::array<RegularCoefficient, 2>;

RegularPair compute_u2(const ProblemData& data, const EffectiveLoad& load, const CascadeGeometry& geom);

/// u_k from u_{k-2} for even k >= 4.
RegularPair recurse_u_even(int k, const RegularPair& previous, const CascadeGeometry& geom);

/// Odd orders vanish identically.
RegularPair zero_regular(int k);

}  // namespace thincascade
