#include "thincascade/oracles/fd_transmission_bvp.hpp"

#include <algorithm>
#include <stdexcept>

namespace thincascade::oracles {

namespace {

std::vector<double> thomas(std::vector<double> a, std::vector<double> b, std::vector<double> c, std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

// Unknowns at x_j = -1 + j dx, j = 1 .. 2n-1; node n is the interface.
std::vector<double> solve_grid(const std::function<double(double)>& F1, const std::function<double(double)>& F2,
                               double h1, double h2, int n) {
  const double dx = 1.0 / n;
  const std::size_t m = static_cast<std::size_t>(2 * n - 1);
  std::vector<double> a(m, 0.0), b(m, 0.0), c(m, 0.0), d(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const int j = static_cast<int>(r) + 1;
    const double x = -1.0 + j * dx;
    if (j < n) {
      a[r] = -h1;
      b[r] = 2 * h1;
      c[r] = -h1;
      d[r] = dx * dx * F1(x);
    } else if (j > n) {
      a[r] = -h2;
      b[r] = 2 * h2;
      c[r] = -h2;
      d[r] = dx * dx * F2(x);
    } else {
      // Control volume [-dx/2, dx/2] around the interface.
      a[r] = -h1;
      b[r] = h1 + h2;
      c[r] = -h2;
      const double left = 0.5 * (F1(0.0) + F1(-dx / 2)) / 2.0;
      const double right = 0.5 * (F2(0.0) + F2(dx / 2)) / 2.0;
      d[r] = dx * dx * (left + right);
    }
  }
  a[0] = 0.0;
  c[m - 1] = 0.0;
  auto inner = thomas(a, b, c, d);
  std::vector<double> w(m + 2, 0.0);
  std::copy(inner.begin(), inner.end(), w.begin() + 1);
  return w;
}

}  // namespace

double TransmissionBvpSolution::operator()(double xq) const {
  if (xq <= x.front()) return w.front();
  if (xq >= x.back()) return w.back();
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double t = (xq - x[j - 1]) / (x[j] - x[j - 1]);
  return (1 - t) * w[j - 1] + t * w[j];
}

TransmissionBvpSolution solve_transmission_bvp(const std::function<double(double)>& F1,
                                               const std::function<double(double)>& F2, double h1, double h2, int n) {
  if (n < 4 || n % 2) throw std::invalid_argument("grid size must be even and >= 4");
  if (!(h1 > 0 && h2 > 0)) throw std::invalid_argument("widths must be positive");
  const auto fine = solve_grid(F1, F2, h1, h2, n);
  const auto coarse = solve_grid(F1, F2, h1, h2, n / 2);
  TransmissionBvpSolution out;
  const int nodes = n + 1;
  for (int j = 0; j < nodes; ++j) {
    out.x.push_back(-1.0 + 2.0 * j / n);
    const double f = fine[static_cast<std::size_t>(2 * j)];
    const double c = coarse[static_cast<std::size_t>(j)];
    out.w.push_back((4.0 * f - c) / 3.0);
  }
  return out;
}

}  // namespace thincascade::oracles
