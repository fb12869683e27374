#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace thincascade {

/// Smooth function of one variable together with its derivatives.
/// Polynomials are stored exactly; anything else goes through a derivative
/// oracle `(order, x) -> value` with a declared maximum order.  Linear
/// combinations and derivative shifts stay inside the class, so the
/// regular expansion never differentiates numerically.
class SmoothFn {
public:
  using Oracle = std::function<double(int order, double x)>;
  static constexpr int kUnlimited = std::numeric_limits<int>::max();

  SmoothFn() = default;  // zero
  static SmoothFn constant(double c);
  /// c[0] + c[1] x + c[2] x^2 + ...; `max_order` caps the advertised
  /// derivative capability (used to model incomplete user data).
  static SmoothFn polynomial(std::vector<double> coeffs, int max_order = kUnlimited);
  static SmoothFn from_oracle(Oracle oracle, int max_order);

  double operator()(double x) const { return derivative(0, x); }
  /// Throws CapabilityError when `order` exceeds max_order().
  double derivative(int order, double x) const;
  int max_order() const { return max_order_; }
  SmoothFn derivative_fn(int order) const;

  bool is_polynomial() const { return !oracle_; }
  /// Exact zero (polynomial with no nonzero coefficient).
  bool is_zero() const;
  const std::vector<double>& coefficients() const { return poly_; }

  friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
  friend SmoothFn operator*(double s, const SmoothFn& a);
  SmoothFn operator-() const { return -1.0 * *this; }

private:
  std::vector<double> poly_;
  std::shared_ptr<const Oracle> oracle_;
  int shift_ = 0;
  int max_order_ = kUnlimited;
};

/// sum_j c_j(x) eta^j.
class EtaPolynomial {
public:
  EtaPolynomial() = default;
  explicit EtaPolynomial(std::vector<SmoothFn> coeffs) : c_(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<SmoothFn>& coeffs() const { return c_; }
  const SmoothFn& coeff(int j) const;
  bool is_zero() const;

  double operator()(double x, double eta) const { return eval(x, eta); }
  double eval(double x, double eta, int dx = 0, int deta = 0) const;
  /// Integral over eta in [a, b] as a function of x.
  SmoothFn integrate_eta(double a, double b) const;
  /// Antiderivative in eta vanishing at eta = a.
  EtaPolynomial antiderivative_eta(double a) const;
  EtaPolynomial derivative_eta() const;
  EtaPolynomial derivative_x(int order = 1) const;
  /// Coefficients of eta^j of the order-th x derivative at x0.
  std::vector<double> at_x(double x0, int order = 0) const;

  friend EtaPolynomial operator+(const EtaPolynomial& a, const EtaPolynomial& b);
  friend EtaPolynomial operator-(const EtaPolynomial& a, const EtaPolynomial& b);
  friend EtaPolynomial operator*(double s, const EtaPolynomial& a);
  /// Multiplies by a function of x only.
  static EtaPolynomial times_eta_power(const SmoothFn& fn, int power);

private:
  std::vector<SmoothFn> c_;
};

/// Dense polynomial sum_{a,b} c[a][b] xi^a eta^b.
class XiEtaPolynomial {
public:
  XiEtaPolynomial() = default;

  double coeff(int a, int b) const;
  void add(int a, int b, double v);
  int degree_xi() const;
  int degree_eta() const;
  bool is_zero(double tol = 0.0) const;

  double eval(double xi, double eta) const;
  double d_xi(double xi, double eta) const;
  double d_eta(double xi, double eta) const;
  XiEtaPolynomial derivative_xi() const;
  XiEtaPolynomial derivative_eta() const;
  XiEtaPolynomial laplacian() const;

  friend XiEtaPolynomial operator+(const XiEtaPolynomial& p, const XiEtaPolynomial& q);
  friend XiEtaPolynomial operator-(const XiEtaPolynomial& p, const XiEtaPolynomial& q);
  friend XiEtaPolynomial operator*(double s, const XiEtaPolynomial& p);

  std::string to_string() const;

private:
  std::vector<std::vector<double>> c_;  // c_[a][b]
};

}  // namespace thincascade
