#include "thincascade/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

void add_orbit3(TriangleRule& r, double a, double b, double w) {
  r.bary.push_back({a, b, b});
  r.bary.push_back({b, a, b});
  r.bary.push_back({b, b, a});
  r.weights.insert(r.weights.end(), 3, w);
}

void add_orbit6(TriangleRule& r, double a, double b, double c, double w) {
  for (const auto& p : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c}, std::array{b, c, a},
                        std::array{c, a, b}, std::array{c, b, a}})
    r.bary.push_back(p);
  r.weights.insert(r.weights.end(), 6, w);
}

std::vector<TriangleRule> make_rules() {
  std::vector<TriangleRule> rules;
  TriangleRule r1;
  r1.degree = 1;
  r1.bary.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
  r1.weights.push_back(1.0);
  rules.push_back(r1);

  TriangleRule r2;
  r2.degree = 2;
  add_orbit3(r2, 2.0 / 3, 1.0 / 6, 1.0 / 3);
  rules.push_back(r2);

  TriangleRule r4;
  r4.degree = 4;
  add_orbit3(r4, 0.108103018168070, 0.445948490915965, 0.223381589678011);
  add_orbit3(r4, 0.816847572980459, 0.091576213509771, 0.109951743655322);
  rules.push_back(r4);

  TriangleRule r5;
  r5.degree = 5;
  r5.bary.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
  r5.weights.push_back(0.225);
  add_orbit3(r5, 0.059715871789770, 0.470142064105115, 0.132394152788506);
  add_orbit3(r5, 0.797426985353087, 0.101286507323456, 0.125939180544827);
  rules.push_back(r5);

  TriangleRule r8;
  r8.degree = 8;
  r8.bary.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
  r8.weights.push_back(0.144315607677787);
  add_orbit3(r8, 0.081414823414554, 0.459292588292723, 0.095091634267285);
  add_orbit3(r8, 0.658861384496480, 0.170569307751760, 0.103217370534718);
  add_orbit3(r8, 0.898905543365938, 0.050547228317031, 0.032458497623198);
  add_orbit6(r8, 0.008394777409958, 0.263112829634638, 0.728492392955404, 0.027230314174435);
  rules.push_back(r8);
  return rules;
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const std::vector<TriangleRule> rules = make_rules();
  for (const auto& r : rules)
    if (r.degree >= degree) return r;
  throw ParameterError("no triangle rule of degree " + std::to_string(degree));
}

LineRule gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre needs at least one node");
  LineRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    r.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace thincascade
