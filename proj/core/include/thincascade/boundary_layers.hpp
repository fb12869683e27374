#pragma once

#include <functional>
#include <vector>

#include "thincascade/regular_expansion.hpp"

namespace thincascade {

/// Truncated separation-of-variables solution in the half strip
/// (0, inf) x Upsilon_i with zero flux on the walls:
///   sum_p a_p e^{-2 p pi xi / h} cos(2 p pi eta / h) + b_p e^{-(2p+1) pi xi / h} sin((2p+1) pi eta / h).
struct FourierLayer {
  int side = 1;
  int order = 0;
  double h = 1.0;
  std::vector<double> a;  // a[p], p = 0..P; a[0] is the zero mode and must vanish
  std::vector<double> b;  // b[p], p = 0..P

  bool empty() const { return a.empty() && b.empty(); }
  int truncation() const { return a.empty() ? 0 : static_cast<int>(a.size()) - 1; }
};

/// Layer matching the trace Phi on xi = 0.  Throws ConsistencyError when the
/// zero mode exceeds 1e-6 in magnitude.
FourierLayer layer_from_trace(int k, int side, const std::function<double(double)>& trace, double h, int P = 32);

/// Layer for order k built from the regular coefficient at the adjoining end.
FourierLayer layer_for_order(int k, int side, const RegularPair& u_k, const CascadeGeometry& geom, int P = 32);

struct LayerValue {
  double value = 0.0;
  double d_xi = 0.0;
  double d_eta = 0.0;
};

LayerValue layer_eval(const FourierLayer& layer, double xi, double eta);

}  // namespace thincascade
