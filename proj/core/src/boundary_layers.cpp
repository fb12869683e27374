#include "thincascade/boundary_layers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thincascade/errors.hpp"
#include "thincascade/quadrature.hpp"

namespace thincascade {

FourierLayer layer_from_trace(int k, int side, const std::function<double(double)>& trace, double h, int P) {
  if (P < 8) throw ParameterError("Fourier truncation must be at least 8");
  if (side != 1 && side != 2) throw ParameterError("layer side must be 1 or 2");
  FourierLayer L;
  L.side = side;
  L.order = k;
  L.h = h;
  const double pi = std::numbers::pi;
  const auto rule = gauss_legendre(10);
  const int panels = std::max(32, 4 * P);
  const double dh = h / panels;
  std::vector<double> eta, wt, tr;
  for (int i = 0; i < panels; ++i)
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      eta.push_back(-h / 2 + dh * (i + rule.nodes[q]));
      wt.push_back(dh * rule.weights[q]);
      tr.push_back(trace(eta.back()));
    }
  const auto project = [&](auto&& basis) {
    double s = 0.0;
    for (std::size_t j = 0; j < eta.size(); ++j) s += wt[j] * tr[j] * basis(eta[j]);
    return s;
  };
  const double mean = project([](double) { return 1.0; }) / h;
  bool all_zero = std::abs(mean) == 0.0;
  L.a.assign(static_cast<std::size_t>(P) + 1, 0.0);
  L.b.assign(static_cast<std::size_t>(P) + 1, 0.0);
  L.a[0] = mean;
  for (int p = 0; p <= P; ++p) {
    if (p > 0) {
      const double w = 2 * p * pi / h;
      L.a[static_cast<std::size_t>(p)] = 2.0 / h * project([&](double e) { return std::cos(w * e); });
    }
    const double v = (2 * p + 1) * pi / h;
    L.b[static_cast<std::size_t>(p)] = 2.0 / h * project([&](double e) { return std::sin(v * e); });
    all_zero = all_zero && L.a[static_cast<std::size_t>(p)] == 0.0 && L.b[static_cast<std::size_t>(p)] == 0.0;
  }
  if (std::abs(mean) > 1e-6)
    throw ConsistencyError("boundary layer of order " + std::to_string(k) + " on side " + std::to_string(side) +
                           " has nonzero mean mode " + std::to_string(mean) + "; end conditions upstream are broken");
  if (all_zero) {
    L.a.clear();
    L.b.clear();
  }
  return L;
}

FourierLayer layer_for_order(int k, int side, const RegularPair& u_k, const CascadeGeometry& geom, int P) {
  const auto& u = u_k[static_cast<std::size_t>(side - 1)];
  if (u.order != k) throw SequencingError("boundary layer of order " + std::to_string(k) + " needs u_" + std::to_string(k));
  FourierLayer L;
  L.side = side;
  L.order = k;
  L.h = geom.branch_width(side);
  if (k < 2 || k % 2 == 1 || u.is_zero()) return L;
  const double x_end = side == 1 ? -1.0 : 1.0;
  return layer_from_trace(k, side, [&](double eta) { return -u.eval(x_end, eta); }, L.h, P);
}

LayerValue layer_eval(const FourierLayer& layer, double xi, double eta) {
  LayerValue out;
  if (layer.empty()) return out;
  const double pi = std::numbers::pi;
  const double h = layer.h;
  for (std::size_t p = 0; p < layer.a.size(); ++p) {
    const double pp = static_cast<double>(p);
    if (p > 0 && layer.a[p] != 0.0) {
      const double w = 2 * pp * pi / h;
      const double e = std::exp(-w * xi);
      const double c = std::cos(w * eta), s = std::sin(w * eta);
      out.value += layer.a[p] * e * c;
      out.d_xi += -w * layer.a[p] * e * c;
      out.d_eta += -w * layer.a[p] * e * s;
    }
    if (layer.b[p] != 0.0) {
      const double v = (2 * pp + 1) * pi / h;
      const double e = std::exp(-v * xi);
      const double c = std::cos(v * eta), s = std::sin(v * eta);
      out.value += layer.b[p] * e * s;
      out.d_xi += -v * layer.b[p] * e * s;
      out.d_eta += v * layer.b[p] * e * c;
    }
  }
  return out;
}

}  // namespace thincascade
