#include "thincascade/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "thincascade/errors.hpp"

namespace thincascade {

const SmoothFn& ProblemData::phi(int branch, int sign) const {
  if (branch != 1 && branch != 2) throw ParameterError("branch index must be 1 or 2");
  return sign > 0 ? phi_plus[static_cast<std::size_t>(branch - 1)] : phi_minus[static_cast<std::size_t>(branch - 1)];
}

int ProblemData::capability() const {
  int cap = SmoothFn::kUnlimited;
  for (const auto& c : f.coeffs())
    if (!c.is_zero()) cap = std::min(cap, c.max_order());
  for (int i = 0; i < 2; ++i) {
    if (!phi_plus[i].is_zero()) cap = std::min(cap, phi_plus[i].max_order());
    if (!phi_minus[i].is_zero()) cap = std::min(cap, phi_minus[i].max_order());
  }
  return cap;
}

bool ProblemData::is_zero() const {
  return f.is_zero() && std::all_of(phi_plus.begin(), phi_plus.end(), [](const SmoothFn& s) { return s.is_zero(); }) &&
         std::all_of(phi_minus.begin(), phi_minus.end(), [](const SmoothFn& s) { return s.is_zero(); });
}

double derivative_oracle_discrepancy(const ProblemData& data, double x0, int max_order) {
  double worst = 0.0;
  auto check = [&](const SmoothFn& fn) {
    if (fn.is_zero()) return;
    const int top = std::min(max_order, fn.max_order());
    for (int k = 1; k <= top; ++k) {
      const double h = 1e-3;
      const double fd = (fn.derivative(k - 1, x0 + h) - fn.derivative(k - 1, x0 - h)) / (2 * h);
      const double exact = fn.derivative(k, x0);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  };
  for (const auto& c : data.f.coeffs()) check(c);
  for (int i = 0; i < 2; ++i) {
    check(data.phi_plus[i]);
    check(data.phi_minus[i]);
  }
  return worst;
}

namespace problem_presets {

ProblemData tp0() {
  ProblemData d;
  d.name = "TP0";
  return d;
}

ProblemData tp1() {
  ProblemData d;
  d.name = "TP1";
  d.f = EtaPolynomial({SmoothFn::constant(1.0)});
  return d;
}

ProblemData tp2() {
  ProblemData d;
  d.name = "TP2";
  d.f = EtaPolynomial({SmoothFn::polynomial({0.0, 1.0})});
  return d;
}

ProblemData tp3() {
  ProblemData d;
  d.name = "TP3";
  d.f = EtaPolynomial({SmoothFn{}, SmoothFn::polynomial({1.0, 1.0})});
  return d;
}

ProblemData by_name(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "TP0") return tp0();
  if (up == "TP1") return tp1();
  if (up == "TP2") return tp2();
  if (up == "TP3") return tp3();
  throw ParameterError("unknown problem preset '" + std::string(name) + "' (TP0, TP1, TP2, TP3)");
}

}  // namespace problem_presets

}  // namespace thincascade
