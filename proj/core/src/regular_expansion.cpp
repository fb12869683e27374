#include "thincascade/regular_expansion.hpp"

#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

// Mean-zero solution of -u'' = q on (-h/2, h/2) with u'(-h/2) = 0; the
// caller guarantees int q = 0 so the upper Neumann condition also holds.
EtaPolynomial neumann_solve(const EtaPolynomial& q, double h) {
  const EtaPolynomial G = q.antiderivative_eta(-h / 2).antiderivative_eta(-h / 2);
  const SmoothFn mean = (1.0 / h) * G.integrate_eta(-h / 2, h / 2);
  return EtaPolynomial({mean}) - G;
}

}  // namespace

RegularPair compute_u2(const ProblemData& data, const EffectiveLoad& load, const CascadeGeometry& geom) {
  RegularPair out;
  for (int i = 1; i <= 2; ++i) {
    const double h = geom.branch_width(i);
    const SmoothFn& F = load.F[static_cast<std::size_t>(i - 1)];
    const EtaPolynomial g = data.f - EtaPolynomial({(1.0 / h) * F});
    const EtaPolynomial G = g.antiderivative_eta(-h / 2).antiderivative_eta(-h / 2);
    const EtaPolynomial base = (-1.0) * G - EtaPolynomial::times_eta_power(data.phi(i, -1), 1);
    const SmoothFn alpha = (-1.0 / h) * base.integrate_eta(-h / 2, h / 2);
    auto& u = out[static_cast<std::size_t>(i - 1)];
    u.order = 2;
    u.branch = i;
    u.field = base + EtaPolynomial({alpha});
  }
  return out;
}

RegularPair recurse_u_even(int k, const RegularPair& previous, const CascadeGeometry& geom) {
  if (k < 4 || k % 2 != 0) throw ParameterError("recurse_u_even: order must be even and >= 4");
  RegularPair out;
  for (int i = 1; i <= 2; ++i) {
    const auto& prev = previous[static_cast<std::size_t>(i - 1)];
    if (prev.order != k - 2) throw SequencingError("recurse_u_even: u_" + std::to_string(k - 2) + " missing");
    auto& u = out[static_cast<std::size_t>(i - 1)];
    u.order = k;
    u.branch = i;
    if (!prev.field.is_zero()) u.field = neumann_solve(prev.field.derivative_x(2), geom.branch_width(i));
  }
  return out;
}

RegularPair zero_regular(int k) {
  RegularPair out;
  out[0].order = out[1].order = k;
  out[0].branch = 1;
  out[1].branch = 2;
  return out;
}

}  // namespace thincascade
