#pragma once

#include <array>
#include <string>
#include <string_view>

#include "thincascade/smooth_function.hpp"

namespace thincascade {

/// Right-hand side f(x, eta) = sum_j c_j(x) eta^j and wall data phi_{+-}^(i)(x).
/// Branch index 1 is stored at position 0.
struct ProblemData {
  std::string name = "custom";
  EtaPolynomial f;
  std::array<SmoothFn, 2> phi_plus;
  std::array<SmoothFn, 2> phi_minus;

  double f_value(double x, double eta) const { return f.eval(x, eta); }
  const SmoothFn& phi(int branch, int sign) const;
  /// Largest derivative order available from every nonzero datum.
  int capability() const;
  bool is_zero() const;
};

/// Finite-difference check of the derivative oracles at x0 for orders <= max_order.
/// Returns the worst relative discrepancy.
double derivative_oracle_discrepancy(const ProblemData& data, double x0 = 0.0, int max_order = 2);

namespace problem_presets {
ProblemData tp0();  // zero data
ProblemData tp1();  // f = 1
ProblemData tp2();  // f = x
ProblemData tp3();  // f = eta (1 + x)
/// TP0..TP3 (case-insensitive).
ProblemData by_name(std::string_view name);
}  // namespace problem_presets

}  // namespace thincascade
