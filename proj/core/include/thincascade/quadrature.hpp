#pragma once

#include <array>
#include <functional>
#include <vector>

namespace thincascade {

/// Symmetric rule on the reference triangle; weights sum to one.
struct TriangleRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> weights;
  int degree = 0;
};

/// Smallest stored rule exact for polynomials of the requested degree (1..8).
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

LineRule gauss_legendre(int n);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int max_depth = 40);

}  // namespace thincascade
