#pragma once

#include <span>
#include <vector>

#include "lfif/numbers.hpp"

namespace lfif {

// Univariate polynomial with exact rational coefficients, ascending degree.
// The coefficient list never carries trailing zeros; the zero polynomial is empty.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);

  static RationalPoly monomial(const Rational& c, int degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int i) const;

  Rational operator()(const Rational& x) const;
  // Nested multiplication in double precision on the converted coefficients.
  double evaluate(double x) const;

  RationalPoly derivative(int order = 1) const;
  // Antiderivative with zero constant term.
  RationalPoly antiderivative() const;
  // x -> p(1 - x)
  RationalPoly reflected() const;

  std::vector<double> to_doubles() const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const Rational& s, const RationalPoly& a);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Real polynomial, ascending coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double t) const { return derivative_at(t, 0); }
  // order-th derivative at t without materializing the derived polynomial.
  double derivative_at(double t, int order) const;
  Polynomial derivative(int order = 1) const;
  // Upper bound of |P^{(order)}(t)| over t in [0, 1] (sum of absolute coefficients).
  double sup_bound_unit(int order = 0) const;

 private:
  std::vector<double> coeffs_;
};

// Polynomial written in the normalized variable t = (x - origin) / width, so
// that evaluation over [origin, origin + width] stays well conditioned.
class IntervalPolynomial {
 public:
  IntervalPolynomial() = default;
  IntervalPolynomial(double origin, double width, Polynomial in_t)
      : origin_(origin), width_(width), poly_(std::move(in_t)) {}

  double origin() const { return origin_; }
  double width() const { return width_; }
  const Polynomial& in_t() const { return poly_; }

  // d^order/dx^order at x.
  double value(double x, int order = 0) const;
  // d^order/dx^order at the point with normalized coordinate t.
  double value_at_t(double t, int order = 0) const;
  // Certified bound on |d^order/dx^order| over [origin, origin + width].
  double sup_bound(int order = 0) const;

 private:
  double origin_ = 0.0;
  double width_ = 1.0;
  Polynomial poly_;
};

}  // namespace lfif
