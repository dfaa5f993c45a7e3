#pragma once

#include <vector>

#include "lfif/polynomial.hpp"

namespace lfif {

// Lambda_l: Lambda_0(x) = x, Lambda_l'' = Lambda_{l-1}, Lambda_l(0) = Lambda_l(1) = 0.
// Exact coefficients, memoized; degree is 2l + 1.
const RationalPoly& lidstone_poly(int l);

// Lambda_l(1 - x), exact.
const RationalPoly& reflected_lidstone_poly(int l);

// Truncated sine series of Lambda_l, l >= 1. Test oracle only; the tail after
// `terms` terms is at most 2/pi^{2l+1} * sum_{n > terms} n^{-(2l+1)}.
double lidstone_poly_fourier(int l, double x, int terms);

// sup_{[0,1]} |Lambda_l| <= 1 / (3 pi^{2l-1}), l >= 1.
double lidstone_bound(int l);

struct TwoPointLidstoneSpec {
  double x0 = 0.0;
  double xN = 1.0;
  std::vector<double> left_values;   // y_{0,2l}, l = 0..p
  std::vector<double> right_values;  // y_{N,2l}, l = 0..p
};

// The polynomial q of degree <= 2p+1 with q^{(2l)}(x0) = left[l] and
// q^{(2l)}(xN) = right[l] for l = 0..p, stored in t = (x - x0)/(xN - x0).
IntervalPolynomial two_point_interpolant(const TwoPointLidstoneSpec& spec);

// Same polynomial, expressed only through its coefficients in t. The left and
// right value lists are scaled by width^{2l} internally.
Polynomial lidstone_combination(std::span<const double> left, std::span<const double> right,
                                double width);

}  // namespace lfif
