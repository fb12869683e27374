#pragma once

namespace thincascade {

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clipped to [0, 1], with derivatives.
struct Smoothstep {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

Smoothstep smoothstep(double t);

struct CutoffSpec {
  double alpha = 0.75;
  double l = 1.0;
  double delta_end = 0.25;

  /// Throws ParameterError unless alpha in (2/3, 1) and 0 < delta_end <= 0.25.
  void validate() const;
};

enum class CutoffKind { Joint, LeftEnd, RightEnd };

/// chi_l(x / eps^alpha), chi^-(x) or chi^+(x) and its first two x-derivatives.
Smoothstep cutoff_eval(const CutoffSpec& spec, CutoffKind which, double x, double eps);

/// Inner cutoff chi_i(xi): 1 far out on branch i, 0 for (-1)^i xi <= 1 + l/2;
/// derivatives are with respect to xi.
Smoothstep inner_cutoff(int branch, double xi, double l);

}  // namespace thincascade
