#include "thincascade/smooth_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thincascade/errors.hpp"

namespace thincascade {

namespace {

int reduce_order(int max_order, int k) { return max_order == SmoothFn::kUnlimited ? max_order : max_order - k; }

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

}  // namespace

SmoothFn SmoothFn::constant(double c) { return polynomial({c}); }

SmoothFn SmoothFn::polynomial(std::vector<double> coeffs, int max_order) {
  SmoothFn f;
  trim(coeffs);
  f.poly_ = std::move(coeffs);
  f.max_order_ = max_order;
  return f;
}

SmoothFn SmoothFn::from_oracle(Oracle oracle, int max_order) {
  if (!oracle) throw ParameterError("empty derivative oracle");
  SmoothFn f;
  f.oracle_ = std::make_shared<const Oracle>(std::move(oracle));
  f.max_order_ = max_order;
  return f;
}

double SmoothFn::derivative(int order, double x) const {
  if (order < 0) throw ParameterError("negative derivative order");
  if (order > max_order_)
    throw CapabilityError("derivative of order " + std::to_string(order) + " requested, only " +
                          std::to_string(max_order_) + " available");
  if (oracle_) return (*oracle_)(order + shift_, x);
  // Horner on the order-th derivative.
  double s = 0.0;
  for (std::size_t j = poly_.size(); j-- > static_cast<std::size_t>(order);) {
    double fall = 1.0;
    for (int m = 0; m < order; ++m) fall *= static_cast<double>(j - static_cast<std::size_t>(m));
    s = s * x + fall * poly_[j];
  }
  return s;
}

SmoothFn SmoothFn::derivative_fn(int order) const {
  if (order < 0) throw ParameterError("negative derivative order");
  if (order == 0) return *this;
  if (order > max_order_)
    throw CapabilityError("derivative of order " + std::to_string(order) + " requested, only " +
                          std::to_string(max_order_) + " available");
  SmoothFn f = *this;
  f.max_order_ = reduce_order(max_order_, order);
  if (oracle_) {
    f.shift_ += order;
    return f;
  }
  std::vector<double> d;
  for (std::size_t j = static_cast<std::size_t>(order); j < poly_.size(); ++j) {
    double fall = 1.0;
    for (int m = 0; m < order; ++m) fall *= static_cast<double>(j - static_cast<std::size_t>(m));
    d.push_back(fall * poly_[j]);
  }
  trim(d);
  f.poly_ = std::move(d);
  return f;
}

bool SmoothFn::is_zero() const { return !oracle_ && poly_.empty(); }

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
  const int mo = std::min(a.max_order_, b.max_order_);
  if (a.is_polynomial() && b.is_polynomial()) {
    std::vector<double> c(std::max(a.poly_.size(), b.poly_.size()), 0.0);
    for (std::size_t j = 0; j < a.poly_.size(); ++j) c[j] += a.poly_[j];
    for (std::size_t j = 0; j < b.poly_.size(); ++j) c[j] += b.poly_[j];
    return SmoothFn::polynomial(std::move(c), mo);
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return SmoothFn::from_oracle([a, b](int k, double x) { return a.derivative(k, x) + b.derivative(k, x); }, mo);
}

SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) { return a + (-1.0) * b; }

SmoothFn operator*(double s, const SmoothFn& a) {
  if (a.is_polynomial()) {
    std::vector<double> c = a.poly_;
    for (double& v : c) v *= s;
    if (s == 0.0) c.clear();
    return SmoothFn::polynomial(std::move(c), a.max_order_);
  }
  if (s == 0.0) return SmoothFn{};
  return SmoothFn::from_oracle([s, a](int k, double x) { return s * a.derivative(k, x); }, a.max_order_);
}

const SmoothFn& EtaPolynomial::coeff(int j) const {
  static const SmoothFn zero;
  if (j < 0 || j >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(j)];
}

bool EtaPolynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const SmoothFn& f) { return f.is_zero(); });
}

double EtaPolynomial::eval(double x, double eta, int dx, int deta) const {
  double s = 0.0;
  for (std::size_t j = c_.size(); j-- > static_cast<std::size_t>(deta);) {
    double fall = 1.0;
    for (int m = 0; m < deta; ++m) fall *= static_cast<double>(j - static_cast<std::size_t>(m));
    const double cj = c_[j].is_zero() ? 0.0 : c_[j].derivative(dx, x);
    s = s * eta + fall * cj;
  }
  return s;
}

SmoothFn EtaPolynomial::integrate_eta(double a, double b) const {
  SmoothFn s;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    const double w = (std::pow(b, static_cast<double>(j + 1)) - std::pow(a, static_cast<double>(j + 1))) / static_cast<double>(j + 1);
    s = s + w * c_[j];
  }
  return s;
}

EtaPolynomial EtaPolynomial::antiderivative_eta(double a) const {
  std::vector<SmoothFn> out(c_.size() + 1);
  SmoothFn c0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    const double inv = 1.0 / static_cast<double>(j + 1);
    out[j + 1] = inv * c_[j];
    c0 = c0 - (std::pow(a, static_cast<double>(j + 1)) * inv) * c_[j];
  }
  out[0] = c0;
  return EtaPolynomial(std::move(out));
}

EtaPolynomial EtaPolynomial::derivative_eta() const {
  if (c_.size() <= 1) return {};
  std::vector<SmoothFn> out(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) out[j - 1] = static_cast<double>(j) * c_[j];
  return EtaPolynomial(std::move(out));
}

EtaPolynomial EtaPolynomial::derivative_x(int order) const {
  std::vector<SmoothFn> out;
  out.reserve(c_.size());
  for (const auto& f : c_) out.push_back(f.is_zero() ? SmoothFn{} : f.derivative_fn(order));
  return EtaPolynomial(std::move(out));
}

std::vector<double> EtaPolynomial::at_x(double x0, int order) const {
  std::vector<double> v(c_.size(), 0.0);
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (!c_[j].is_zero()) v[j] = c_[j].derivative(order, x0);
  return v;
}

EtaPolynomial operator+(const EtaPolynomial& a, const EtaPolynomial& b) {
  std::vector<SmoothFn> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(static_cast<int>(j)) + b.coeff(static_cast<int>(j));
  return EtaPolynomial(std::move(c));
}

EtaPolynomial operator-(const EtaPolynomial& a, const EtaPolynomial& b) { return a + (-1.0) * b; }

EtaPolynomial operator*(double s, const EtaPolynomial& a) {
  std::vector<SmoothFn> c;
  c.reserve(a.c_.size());
  for (const auto& f : a.c_) c.push_back(s * f);
  return EtaPolynomial(std::move(c));
}

EtaPolynomial EtaPolynomial::times_eta_power(const SmoothFn& fn, int power) {
  std::vector<SmoothFn> c(static_cast<std::size_t>(power) + 1);
  c[static_cast<std::size_t>(power)] = fn;
  return EtaPolynomial(std::move(c));
}

double XiEtaPolynomial::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(c_.size())) return 0.0;
  const auto& row = c_[static_cast<std::size_t>(a)];
  return b < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(b)] : 0.0;
}

void XiEtaPolynomial::add(int a, int b, double v) {
  if (v == 0.0) return;
  if (a >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(a) + 1);
  auto& row = c_[static_cast<std::size_t>(a)];
  if (b >= static_cast<int>(row.size())) row.resize(static_cast<std::size_t>(b) + 1, 0.0);
  row[static_cast<std::size_t>(b)] += v;
}

int XiEtaPolynomial::degree_xi() const { return static_cast<int>(c_.size()) - 1; }

int XiEtaPolynomial::degree_eta() const {
  int d = -1;
  for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

bool XiEtaPolynomial::is_zero(double tol) const {
  for (const auto& row : c_)
    for (double v : row)
      if (std::abs(v) > tol) return false;
  return true;
}

double XiEtaPolynomial::eval(double xi, double eta) const {
  double s = 0.0;
  for (std::size_t a = c_.size(); a-- > 0;) {
    double r = 0.0;
    const auto& row = c_[a];
    for (std::size_t b = row.size(); b-- > 0;) r = r * eta + row[b];
    s = s * xi + r;
  }
  return s;
}

double XiEtaPolynomial::d_xi(double xi, double eta) const { return derivative_xi().eval(xi, eta); }
double XiEtaPolynomial::d_eta(double xi, double eta) const { return derivative_eta().eval(xi, eta); }

XiEtaPolynomial XiEtaPolynomial::derivative_xi() const {
  XiEtaPolynomial d;
  for (std::size_t a = 1; a < c_.size(); ++a)
    for (std::size_t b = 0; b < c_[a].size(); ++b) d.add(static_cast<int>(a - 1), static_cast<int>(b), static_cast<double>(a) * c_[a][b]);
  return d;
}

XiEtaPolynomial XiEtaPolynomial::derivative_eta() const {
  XiEtaPolynomial d;
  for (std::size_t a = 0; a < c_.size(); ++a)
    for (std::size_t b = 1; b < c_[a].size(); ++b) d.add(static_cast<int>(a), static_cast<int>(b - 1), static_cast<double>(b) * c_[a][b]);
  return d;
}

XiEtaPolynomial XiEtaPolynomial::laplacian() const {
  return derivative_xi().derivative_xi() + derivative_eta().derivative_eta();
}

XiEtaPolynomial operator+(const XiEtaPolynomial& p, const XiEtaPolynomial& q) {
  XiEtaPolynomial r = p;
  for (std::size_t a = 0; a < q.c_.size(); ++a)
    for (std::size_t b = 0; b < q.c_[a].size(); ++b) r.add(static_cast<int>(a), static_cast<int>(b), q.c_[a][b]);
  return r;
}

XiEtaPolynomial operator-(const XiEtaPolynomial& p, const XiEtaPolynomial& q) { return p + (-1.0) * q; }

XiEtaPolynomial operator*(double s, const XiEtaPolynomial& p) {
  XiEtaPolynomial r = p;
  for (auto& row : r.c_)
    for (double& v : row) v *= s;
  return r;
}

std::string XiEtaPolynomial::to_string() const {
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (std::size_t a = 0; a < c_.size(); ++a)
    for (std::size_t b = 0; b < c_[a].size(); ++b) {
      if (c_[a][b] == 0.0) continue;
      if (!first) out << " + ";
      first = false;
      out << c_[a][b];
      if (a) out << "*xi^" << a;
      if (b) out << "*eta^" << b;
    }
  if (first) out << '0';
  return out.str();
}

}  // namespace thincascade
