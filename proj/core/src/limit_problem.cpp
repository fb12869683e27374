#include "thincascade/limit_problem.hpp"

#include <algorithm>
#include <cmath>

#include "thincascade/errors.hpp"
#include "thincascade/quadrature.hpp"

namespace thincascade {

namespace {

constexpr double kSimpsonTol = 1e-12;

std::vector<double> antiderivative(const std::vector<double>& c, double anchor) {
  std::vector<double> out(c.size() + 1, 0.0);
  double at_anchor = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    out[j + 1] = c[j] / static_cast<double>(j + 1);
    at_anchor += out[j + 1] * std::pow(anchor, static_cast<double>(j + 1));
  }
  out[0] = -at_anchor;
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Particular solution of -h w'' = F with w(a) = w'(a) = 0 plus `lin` times
// (x + 1) on the left branch or (1 - x) on the right branch.
SmoothFn branch_solution(const SmoothFn& F, double h, int branch, double lin) {
  const double a = branch == 1 ? -1.0 : 1.0;
  if (F.is_polynomial()) {
    auto p = antiderivative(antiderivative(F.coefficients(), a), a);
    for (double& v : p) v *= -1.0 / h;
    const SmoothFn particular = SmoothFn::polynomial(std::move(p), F.max_order() == SmoothFn::kUnlimited ? SmoothFn::kUnlimited : F.max_order() + 2);
    const SmoothFn linear = branch == 1 ? SmoothFn::polynomial({lin, lin}) : SmoothFn::polynomial({lin, -lin});
    return particular + linear;
  }
  const int mo = F.max_order() == SmoothFn::kUnlimited ? SmoothFn::kUnlimited : F.max_order() + 2;
  return SmoothFn::from_oracle(
      [F, h, branch, lin](int k, double x) -> double {
        if (branch == 1) {
          if (k == 0)
            return -adaptive_simpson([&](double s) { return (x - s) * F(s); }, -1.0, x, kSimpsonTol) / h + lin * (x + 1.0);
          if (k == 1) return -adaptive_simpson([&](double s) { return F(s); }, -1.0, x, kSimpsonTol) / h + lin;
        } else {
          if (k == 0)
            return -adaptive_simpson([&](double s) { return (s - x) * F(s); }, x, 1.0, kSimpsonTol) / h + lin * (1.0 - x);
          if (k == 1) return adaptive_simpson([&](double s) { return F(s); }, x, 1.0, kSimpsonTol) / h - lin;
        }
        return -F.derivative(k - 2, x) / h;
      },
      mo);
}

}  // namespace

EffectiveLoad effective_rhs(const ProblemData& data, const CascadeGeometry& geom) {
  EffectiveLoad load;
  for (int i = 1; i <= 2; ++i) {
    const double h = geom.branch_width(i);
    load.F[static_cast<std::size_t>(i - 1)] = data.f.integrate_eta(-h / 2, h / 2) - data.phi(i, +1) + data.phi(i, -1);
  }
  return load;
}

OmegaCoefficient solve_omega2(const EffectiveLoad& load, const CascadeGeometry& geom) {
  const double h1 = geom.h1, h2 = geom.h2;
  const SmoothFn& F1 = load.F[0];
  const SmoothFn& F2 = load.F[1];
  const double I1 = adaptive_simpson([&](double s) { return -s * F1(s); }, -1.0, 0.0, kSimpsonTol);
  const double I2 = adaptive_simpson([&](double s) { return s * F2(s); }, 0.0, 1.0, kSimpsonTol);
  const double J1 = adaptive_simpson([&](double s) { return F1(s); }, -1.0, 0.0, kSimpsonTol);
  const double J2 = adaptive_simpson([&](double s) { return F2(s); }, 0.0, 1.0, kSimpsonTol);
  // Value continuity: A - B = I1/h1 - I2/h2; flux continuity: h1 A + h2 B = J1 + J2.
  const double c = I1 / h1 - I2 / h2;
  const double B = (J1 + J2 - h1 * c) / (h1 + h2);
  const double A = B + c;
  OmegaCoefficient w;
  w.order = 2;
  w.branch[0] = branch_solution(F1, h1, 1, A);
  w.branch[1] = branch_solution(F2, h2, 2, B);
  return w;
}

double printed_omega2(const EffectiveLoad& load, const CascadeGeometry& geom, int branch, double x) {
  const double h1 = geom.h1, h2 = geom.h2;
  const SmoothFn& F1 = load.F[0];
  const SmoothFn& F2 = load.F[1];
  if (branch == 1) {
    const double first = adaptive_simpson([&](double s) { return (s - x) * F1(s); }, -1.0, x, kSimpsonTol) / h1;
    const double bracket = adaptive_simpson([&](double s) { return (h2 / h1 * s - 1.0) * F1(s); }, -1.0, 0.0, kSimpsonTol) +
                           adaptive_simpson([&](double s) { return (1.0 - s) * F2(s); }, 0.0, 1.0, kSimpsonTol);
    return first - (x + 1.0) / (h1 + h2) * bracket;
  }
  const double first = adaptive_simpson([&](double s) { return (s - x) * F2(s); }, x, 1.0, kSimpsonTol) / h2;
  const double bracket = adaptive_simpson([&](double s) { return (h1 / h2 * s + 1.0) * F2(s); }, 0.0, 1.0, kSimpsonTol) -
                         adaptive_simpson([&](double s) { return (1.0 + s) * F1(s); }, -1.0, 0.0, kSimpsonTol);
  return first - (1.0 - x) / (h1 + h2) * bracket;
}

std::array<double, 2> printed_omega2_discrepancy(const EffectiveLoad& load, const CascadeGeometry& geom,
                                                 const OmegaCoefficient& omega2) {
  std::array<double, 2> worst{0.0, 0.0};
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    const double x1 = -1.0 + t, x2 = t;
    worst[0] = std::max(worst[0], std::abs(printed_omega2(load, geom, 1, x1) - omega2.value(1, x1)));
    worst[1] = std::max(worst[1], std::abs(printed_omega2(load, geom, 2, x2) - omega2.value(2, x2)));
  }
  return worst;
}

double joint_moment(const ProblemData& data, const CascadeGeometry& geom, int m) {
  const auto f0 = data.f.at_x(0.0, m);
  if (std::all_of(f0.begin(), f0.end(), [](double v) { return v == 0.0; })) return 0.0;
  const auto& bp = geom.joint.breakpoints();
  const int deg = static_cast<int>(f0.size()) + m + 1;
  const auto rule = gauss_legendre(deg / 2 + 2);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
    const double xa = bp[s].xi, xb = bp[s + 1].xi;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double xi = xa + (xb - xa) * rule.nodes[q];
      const double top = geom.joint.upper(xi), bot = -geom.joint.lower(xi);
      double col = 0.0;
      for (std::size_t j = 0; j < f0.size(); ++j)
        col += f0[j] * (std::pow(top, static_cast<double>(j + 1)) - std::pow(bot, static_cast<double>(j + 1))) /
               static_cast<double>(j + 1);
      total += rule.weights[q] * (xb - xa) * std::pow(xi, m) / factorial(m) * col;
    }
  }
  return total;
}

double compute_d_star(const ProblemData& data, const CascadeGeometry& geom, int k) {
  if (k < 2) throw ParameterError("compute_d_star: order must be >= 2");
  if (k == 2) return 0.0;
  const int m = k - 3;
  if (data.capability() < m)
    throw CapabilityError("compute_d_star: order " + std::to_string(k) + " needs derivatives of order " +
                          std::to_string(m) + " at x = 0, data provide " + std::to_string(data.capability()));
  const auto load = effective_rhs(data, geom);
  double d = 0.0;
  for (int i = 1; i <= 2; ++i) {
    const double sign = i == 1 ? 1.0 : -1.0;
    const double end = (i == 1 ? -1.0 : 1.0) * geom.l / 2;
    const SmoothFn& F = load.F[static_cast<std::size_t>(i - 1)];
    const double Fm = F.is_zero() ? 0.0 : F.derivative(m, 0.0);
    d += sign * std::pow(end, k - 2) / factorial(k - 2) * Fm;
  }
  return d + joint_moment(data, geom, m);
}

OmegaCoefficient solve_omega_k(int k, const TransmissionConstants& constants, const CascadeGeometry& geom) {
  if (k < 3) throw ParameterError("solve_omega_k: order must be >= 3");
  auto d = constants.d_star.find(k);
  if (d == constants.d_star.end())
    throw SequencingError("solve_omega_k: d_" + std::to_string(k) + "^* has not been computed");
  auto delta = constants.delta_plus.find(k - 2);
  if (delta == constants.delta_plus.end())
    throw SequencingError("solve_omega_k: delta_" + std::to_string(k - 2) + "^+ has not been computed");
  const double h1 = geom.h1, h2 = geom.h2;
  const double a1 = (d->second - h2 * delta->second) / (h1 + h2);
  const double a2 = (d->second + h1 * delta->second) / (h1 + h2);
  OmegaCoefficient w;
  w.order = k;
  w.branch[0] = SmoothFn::polynomial({a1, a1});
  w.branch[1] = SmoothFn::polynomial({a2, -a2});
  return w;
}

TransmissionResidual transmission_residual(const OmegaCoefficient& w, const CascadeGeometry& geom,
                                           double expected_value_jump, double expected_flux_jump) {
  TransmissionResidual r;
  r.value_jump = std::abs(w.value(2, 0.0) - w.value(1, 0.0) - expected_value_jump);
  r.flux_jump = std::abs(geom.h1 * w.derivative(1, 1, 0.0) - geom.h2 * w.derivative(2, 1, 0.0) - expected_flux_jump);
  r.left_end = std::abs(w.value(1, -1.0));
  r.right_end = std::abs(w.value(2, 1.0));
  return r;
}

}  // namespace thincascade
