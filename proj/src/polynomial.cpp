#include "lfif/polynomial.hpp"

#include <cmath>

#include "lfif/errors.hpp"

namespace lfif {

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree + 1));
  coeffs.back() = c;
  return RationalPoly(std::move(coeffs));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

RationalPoly RationalPoly::derivative(int order) const {
  if (order < 0) throw ValidationError("derivative order must be nonnegative");
  std::vector<Rational> c = coeffs_;
  for (int r = 0; r < order; ++r) {
    if (c.empty()) break;
    std::vector<Rational> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<int>(i);
    c = std::move(d);
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::antiderivative() const {
  std::vector<Rational> c(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    c[i + 1] = coeffs_[i] / static_cast<int>(i + 1);
  }
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::reflected() const {
  // (1 - x)^i expanded binomially.
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rational term = coeffs_[i] * Rational(binomial(static_cast<int>(i), static_cast<int>(j)));
      c[j] += (j % 2 == 0) ? term : -term;
    }
  }
  return RationalPoly(std::move(c));
}

std::vector<double> RationalPoly::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(to_double(c));
  return out;
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  return a + Rational(-1) * b;
}

RationalPoly operator*(const Rational& s, const RationalPoly& a) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& v : c) v *= s;
  return RationalPoly(std::move(c));
}

double Polynomial::derivative_at(double t, int order) const {
  const int deg = degree();
  if (order > deg) return 0.0;
  double acc = 0.0;
  for (int i = deg; i >= order; --i) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= i - j;
    acc = acc * t + falling * coeffs_[static_cast<std::size_t>(i)];
  }
  return acc;
}

Polynomial Polynomial::derivative(int order) const {
  const int deg = degree();
  if (order > deg) return Polynomial{};
  std::vector<double> d(static_cast<std::size_t>(deg - order + 1));
  for (int i = order; i <= deg; ++i) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= i - j;
    d[static_cast<std::size_t>(i - order)] = falling * coeffs_[static_cast<std::size_t>(i)];
  }
  return Polynomial(std::move(d));
}

double Polynomial::sup_bound_unit(int order) const {
  const Polynomial d = derivative(order);
  double s = 0.0;
  for (double c : d.coefficients()) s += std::abs(c);
  return s;
}

double IntervalPolynomial::value(double x, int order) const {
  return value_at_t((x - origin_) / width_, order);
}

double IntervalPolynomial::value_at_t(double t, int order) const {
  return poly_.derivative_at(t, order) / std::pow(width_, order);
}

double IntervalPolynomial::sup_bound(int order) const {
  return poly_.sup_bound_unit(order) / std::pow(width_, order);
}

}  // namespace lfif
