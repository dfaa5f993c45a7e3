#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace lfif {

using BigInt = boost::multiprecision::cpp_int;
// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// Largest half-order p supported by the polynomial machinery (degree 2p+1 = 17).
inline constexpr int kMaxHalfOrder = 8;

double to_double(const Rational& r);

// E_m from sum_{j even <= m} C(m, j) E_j = 0. Requires m even, m >= 0.
Rational euler_number(int m);

// B_m from sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1. Odd m >= 3 are rejected.
Rational bernoulli_number(int m);

// Error coefficient d_{2p,k} of the piecewise Lidstone error estimate,
// 0 <= k <= 2p+1. Even k use Euler numbers, odd k < 2p+1 Bernoulli numbers,
// and d_{2p,2p+1} = 2.
Rational d_constant(int p, int k);

// M_{2k,2p} = (2 rho pi / 3) * sum_{l=0}^{p-k} (span/pi)^{2l}.
double m_constant(int k, int p, double rho, double span);

BigInt binomial(int n, int k);

}  // namespace lfif
