#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thincascade/boundary_layers.hpp"
#include "thincascade/errors.hpp"

using namespace thincascade;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(BoundaryLayers, SingleCosineModeIsRecovered) {
  const double h = 1.0;
  const auto layer = layer_from_trace(2, 1, [&](double eta) { return std::cos(2 * pi * eta / h); }, h, 8);
  ASSERT_EQ(layer.truncation(), 8);
  EXPECT_NEAR(layer.a[1], 1.0, 1e-12);
  for (int p = 2; p <= 8; ++p) EXPECT_NEAR(layer.a[p], 0.0, 1e-12);
  for (int p = 0; p <= 8; ++p) EXPECT_NEAR(layer.b[p], 0.0, 1e-12);
  EXPECT_NEAR(layer_eval(layer, 1.0, 0.0).value, std::exp(-2 * pi / h), 1e-12);
}

TEST(BoundaryLayers, TraceIsMatchedAndLayerIsHarmonicWithNeumannWalls) {
  const double h = 0.5;
  const auto trace = [&](double eta) { return eta * eta - h * h / 12.0 + 0.3 * eta; };
  const auto layer = layer_from_trace(2, 2, trace, h, 64);
  for (double eta : {-0.2, 0.0, 0.1}) EXPECT_NEAR(layer_eval(layer, 0.0, eta).value, trace(eta), 2e-3);
  const double d = 1e-3, xi = 0.3, eta = 0.05;
  const double lap = (layer_eval(layer, xi + d, eta).value + layer_eval(layer, xi - d, eta).value +
                      layer_eval(layer, xi, eta + d).value + layer_eval(layer, xi, eta - d).value -
                      4 * layer_eval(layer, xi, eta).value) /
                     (d * d);
  EXPECT_NEAR(lap, 0.0, 1e-5);
  EXPECT_NEAR(layer_eval(layer, 0.2, h / 2).d_eta, 0.0, 1e-12);
  EXPECT_NEAR(layer_eval(layer, 0.2, -h / 2).d_eta, 0.0, 1e-12);
}

TEST(BoundaryLayers, DecayIsExponentialAtTheFirstModeRate) {
  const double h = 1.0;
  const auto layer = layer_from_trace(2, 1, [](double eta) { return std::sin(pi * eta) + 0.2 * std::cos(2 * pi * eta); }, h);
  const double v1 = std::abs(layer_eval(layer, 2.0, 0.25).value), v2 = std::abs(layer_eval(layer, 3.0, 0.25).value);
  EXPECT_NEAR(v2 / v1, std::exp(-pi / h), 1e-6);
}

TEST(BoundaryLayers, NonZeroMeanTraceIsInconsistent) {
  EXPECT_THROW(layer_from_trace(2, 1, [](double) { return 1.0; }, 1.0), ConsistencyError);
}

TEST(BoundaryLayers, OddOrdersAndZeroRegularTermsGiveEmptyLayers) {
  const auto g = geometry_presets::widening();
  const auto data = problem_presets::tp1();
  const auto u2 = compute_u2(data, effective_rhs(data, g), g);
  EXPECT_TRUE(layer_for_order(2, 1, u2, g).empty());
  EXPECT_TRUE(layer_for_order(3, 1, zero_regular(3), g).empty());
}

TEST(BoundaryLayers, LayerCancelsRegularTraceAtTheEnd) {
  const auto g = geometry_presets::cascade();
  ProblemData data;
  data.f = EtaPolynomial({SmoothFn{}, SmoothFn::polynomial({2.0, 1.0})});
  const auto u2 = compute_u2(data, effective_rhs(data, g), g);
  const auto left = layer_for_order(2, 1, u2, g), right = layer_for_order(2, 2, u2, g);
  ASSERT_FALSE(left.empty());
  ASSERT_FALSE(right.empty());
  for (double eta : {-0.3, 0.1})
    EXPECT_NEAR(layer_eval(left, 0.0, eta).value + u2[0].eval(-1.0, eta), 0.0, 1e-5);
  for (double eta : {-0.2, 0.15})
    EXPECT_NEAR(layer_eval(right, 0.0, eta).value + u2[1].eval(1.0, eta), 0.0, 1e-5);
}
