#include "thincascade/composite.hpp"

#include <cmath>

#include "thincascade/errors.hpp"

namespace thincascade {

double Pipeline::inner_constant(int k) const {
  auto it = omega.find(k + 2);
  if (it == omega.end()) throw SequencingError("N_" + std::to_string(k) + " needs omega_" + std::to_string(k + 2));
  return it->second.value(1, 0.0);
}

InnerTerm Pipeline::inner_term(int k) const {
  InnerTerm t;
  t.order = k;
  t.constant = inner_constant(k);
  t.domain = inner;
  if (k > 0) {
    auto it = correctors.find(k);
    if (it == correctors.end()) throw SequencingError("N_" + std::to_string(k) + " has not been solved");
    t.corrector = it->second;
  }
  return t;
}

Pipeline run_pipeline(const ProblemData& data, const CascadeGeometry& geom, const PipelineOptions& options) {
  geom.validate();
  if (options.m < 1) throw ParameterError("pipeline order m must be >= 1");
  const int top = 2 * options.m;
  for (int k = 3; k <= top + 2; ++k) (void)compute_d_star(data, geom, k);

  Pipeline p;
  p.data = data;
  p.geom = geom;
  p.m = options.m;
  p.load = effective_rhs(data, geom);

  p.u[0] = zero_regular(0);
  p.u[1] = zero_regular(1);
  p.u[2] = compute_u2(data, p.load, geom);
  for (int k = 3; k <= top; ++k) p.u[k] = k % 2 ? zero_regular(k) : recurse_u_even(k, p.u[k - 2], geom);
  for (int k = 2; k <= top; k += 2)
    p.layers[k] = {layer_for_order(k, 1, p.u[k], geom, options.fourier_terms),
                   layer_for_order(k, 2, p.u[k], geom, options.fourier_terms)};

  p.omega[2] = solve_omega2(p.load, geom);
  p.constants.d_star[2] = 0.0;
  p.constants.delta_plus[0] = 0.0;

  const double L = options.L > 0.0 ? options.L : default_truncation_length(geom);
  const double th = options.inner_target_h > 0.0 ? options.inner_target_h : default_inner_target_h(geom);
  p.inner = std::make_shared<const InnerDomain>(make_inner_domain(geom, L, th, options.mesher));

  for (int k = 1; k <= top; ++k) {
    const auto forcing = inner_data_k(k, data, geom, p.omega, p.u);
    auto corr = std::make_shared<const InnerCorrector>(solve_inner_k(forcing, *p.inner, options.solver));
    p.constants.delta_plus[k] = corr->delta_plus;
    p.correctors[k] = std::move(corr);
    p.constants.d_star[k + 2] = compute_d_star(data, geom, k + 2);
    p.omega[k + 2] = solve_omega_k(k + 2, p.constants, geom);
  }
  return p;
}

CompositeApproximation assemble_composite(int m, double eps, std::shared_ptr<const Pipeline> parts,
                                          const CutoffSpec& spec) {
  if (!parts) throw SequencingError("composite assembly without pipeline results");
  if (m < 1) throw ParameterError("composite order m must be >= 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw ParameterError("eps must lie in (0, 0.5]");
  CutoffSpec s = spec;
  s.l = parts->geom.l;
  s.validate();
  for (int k = 2; k <= 2 * m + 2; ++k)
    if (!parts->omega.count(k)) throw SequencingError("composite needs omega_" + std::to_string(k));
  for (int k = 0; k <= 2 * m; ++k) {
    if (!parts->u.count(k)) throw SequencingError("composite needs u_" + std::to_string(k));
    if (k >= 1 && !parts->correctors.count(k)) throw SequencingError("composite needs N_" + std::to_string(k));
  }
  for (int k = 2; k <= 2 * m; k += 2)
    if (!parts->layers.count(k)) throw SequencingError("composite needs Pi_" + std::to_string(k));
  if (!parts->inner) throw SequencingError("composite needs the inner domain");
  const double reach = 2.0 * s.l * std::pow(eps, s.alpha - 1.0);
  if (reach > parts->inner->L)
    throw ParameterError("inner truncation length " + std::to_string(parts->inner->L) + " is shorter than 2 l eps^(alpha-1) = " +
                         std::to_string(reach));
  if (2.0 * s.l * std::pow(eps, s.alpha) >= 1.0)
    throw ParameterError("joint cutoff support 2 l eps^alpha reaches the branch ends");
  CompositeApproximation U;
  U.m = m;
  U.eps = eps;
  U.spec = s;
  U.parts = parts;
  for (int k = 0; k <= 2 * m; ++k) U.N[k] = parts->inner_term(k);
  return U;
}

ValueGrad omega_partial_sum(const OmegaList& omega, double eps, int order, double x) {
  ValueGrad out;
  const int branch = x <= 0.0 ? 1 : 2;
  double ek = 1.0;
  for (int k = 0; k <= order; ++k, ek *= eps) {
    auto it = omega.find(k + 2);
    if (it == omega.end()) throw SequencingError("omega_" + std::to_string(k + 2) + " missing");
    if (it->second.is_zero()) continue;
    out.value += ek * it->second.value(branch, x);
    out.grad.x += ek * it->second.derivative(branch, 1, x);
  }
  return out;
}

ValueGrad composite_eval(const CompositeApproximation& U, Point p, JointBlend blend) {
  const Pipeline& P = *U.parts;
  const double eps = U.eps, x = p.x, eta = p.y / eps;
  const int top = 2 * U.m;
  Smoothstep chi = cutoff_eval(U.spec, CutoffKind::Joint, x, eps);
  if (blend == JointBlend::RegularOnly) chi = {};
  if (blend == JointBlend::InnerOnly) chi = {1.0, 0.0, 0.0};

  ValueGrad out;
  if (chi.value < 1.0 || chi.d1 != 0.0) {
    const int branch = x <= 0.0 ? 1 : 2;
    const auto s = static_cast<std::size_t>(branch - 1);
    double val = 0.0, gx = 0.0, gy = 0.0, ek = 1.0;
    for (int k = 0; k <= top; ++k, ek *= eps) {
      const auto& w = P.omega.at(k + 2);
      const auto& u = P.u.at(k)[s];
      double v = w.value(branch, x), dx = w.derivative(branch, 1, x), dy = 0.0;
      if (!u.is_zero()) {
        v += u.eval(x, eta);
        dx += u.d_x(x, eta);
        dy += u.d_eta(x, eta) / eps;
      }
      val += ek * v;
      gx += ek * dx;
      gy += ek * dy;
    }
    out.value += (1.0 - chi.value) * val;
    out.grad.x += (1.0 - chi.value) * gx - chi.d1 * val;
    out.grad.y += (1.0 - chi.value) * gy;
  }
  if (chi.value > 0.0 || chi.d1 != 0.0) {
    const Point q{x / eps, eta};
    double val = 0.0, gx = 0.0, gy = 0.0, ek = 1.0;
    for (int k = 0; k <= top; ++k, ek *= eps) {
      const auto n = U.N.at(k).eval(q);
      val += ek * n.value;
      gx += ek * n.grad.x / eps;
      gy += ek * n.grad.y / eps;
    }
    out.value += chi.value * val;
    out.grad.x += chi.value * gx + chi.d1 * val;
    out.grad.y += chi.value * gy;
  }
  const auto left = cutoff_eval(U.spec, CutoffKind::LeftEnd, x, eps);
  const auto right = cutoff_eval(U.spec, CutoffKind::RightEnd, x, eps);
  double e2k = eps * eps;
  for (int k = 2; k <= top; k += 2, e2k *= eps * eps) {
    const auto& pair = P.layers.at(k);
    if (left.value > 0.0 || left.d1 != 0.0) {
      const auto pi = layer_eval(pair[0], (1.0 + x) / eps, eta);
      out.value += e2k * left.value * pi.value;
      out.grad.x += e2k * (left.d1 * pi.value + left.value * pi.d_xi / eps);
      out.grad.y += e2k * left.value * pi.d_eta / eps;
    }
    if (right.value > 0.0 || right.d1 != 0.0) {
      const auto pi = layer_eval(pair[1], (1.0 - x) / eps, eta);
      out.value += e2k * right.value * pi.value;
      out.grad.x += e2k * (right.d1 * pi.value - right.value * pi.d_xi / eps);
      out.grad.y += e2k * right.value * pi.d_eta / eps;
    }
  }
  return out;
}

}  // namespace thincascade
