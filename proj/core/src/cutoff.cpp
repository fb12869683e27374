#include "thincascade/cutoff.hpp"

#include <cmath>

#include "thincascade/errors.hpp"

namespace thincascade {

Smoothstep smoothstep(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  const double t2 = t * t;
  return {t2 * t * (10.0 - 15.0 * t + 6.0 * t2), 30.0 * t2 * (1.0 - t) * (1.0 - t), 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)};
}

void CutoffSpec::validate() const {
  if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) throw ParameterError("cutoff exponent alpha must lie in (2/3, 1)");
  if (!(delta_end > 0.0 && delta_end <= 0.25)) throw ParameterError("end cutoff width must lie in (0, 0.25]");
  if (!(l > 0.0)) throw ParameterError("joint length must be positive");
}

namespace {

// S(a * t + b) composed, derivatives scaled by the inner slope a.
Smoothstep chain(double a, double b, double t) {
  auto s = smoothstep(a * t + b);
  s.d1 *= a;
  s.d2 *= a * a;
  return s;
}

}  // namespace

Smoothstep cutoff_eval(const CutoffSpec& spec, CutoffKind which, double x, double eps) {
  if (!(eps > 0.0)) throw ParameterError("cutoff_eval needs eps > 0");
  switch (which) {
    case CutoffKind::Joint: {
      const double scale = std::pow(eps, spec.alpha);
      const double sgn = x < 0.0 ? -1.0 : 1.0;
      // S((2l - |z|) / l), z = x / eps^alpha
      auto s = chain(-sgn / (spec.l * scale), 2.0, x);
      if (x == 0.0) s.d1 = s.d2 = 0.0;
      return s;
    }
    case CutoffKind::LeftEnd:
      // S((2 delta - (1 + x)) / delta)
      return chain(-1.0 / spec.delta_end, 2.0 - 1.0 / spec.delta_end, x);
    case CutoffKind::RightEnd:
      return chain(1.0 / spec.delta_end, 2.0 - 1.0 / spec.delta_end, x);
  }
  return {};
}

Smoothstep inner_cutoff(int branch, double xi, double l) {
  const double sgn = branch == 1 ? -1.0 : 1.0;
  return chain(sgn, -1.0 - l / 2.0, xi);
}

}  // namespace thincascade
