#pragma once

#include <functional>
#include <vector>

namespace thincascade::oracles {

/// Second-order finite-difference solution of
///   -h1 w'' = F1 on (-1, 0),  -h2 w'' = F2 on (0, 1),
///   w(-1) = w(1) = 0,  w continuous and h1 w'(0-) = h2 w'(0+),
/// on a uniform grid with n cells per side, Richardson-extrapolated
/// against the grid with n/2 cells per side.
struct TransmissionBvpSolution {
  std::vector<double> x;
  std::vector<double> w;

  /// Piecewise-linear interpolation on the grid.
  double operator()(double xq) const;
};

TransmissionBvpSolution solve_transmission_bvp(const std::function<double(double)>& F1,
                                               const std::function<double(double)>& F2, double h1, double h2,
                                               int n = 4000);

}  // namespace thincascade::oracles
