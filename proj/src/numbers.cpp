#include "lfif/numbers.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "lfif/errors.hpp"

namespace lfif {
namespace {

std::mutex memo_mutex;
std::vector<Rational> euler_memo{Rational(1)};      // E_0, E_2, E_4, ...
std::vector<Rational> bernoulli_memo{Rational(1)};  // B_0, B_1, B_2, ...

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

Rational euler_number(int m) {
  if (m < 0 || m % 2 != 0) {
    throw ValidationError("euler_number: order must be even and nonnegative, got " +
                          std::to_string(m));
  }
  std::lock_guard lock(memo_mutex);
  while (static_cast<int>(euler_memo.size()) <= m / 2) {
    const int mm = 2 * static_cast<int>(euler_memo.size());
    Rational sum = 0;
    for (int j = 0; j < mm; j += 2) sum += Rational(binomial(mm, j)) * euler_memo[j / 2];
    euler_memo.push_back(-sum);
  }
  return euler_memo[m / 2];
}

Rational bernoulli_number(int m) {
  if (m < 0 || (m % 2 != 0 && m != 1)) {
    throw ValidationError("bernoulli_number: odd orders above 1 are not supported, got " +
                          std::to_string(m));
  }
  std::lock_guard lock(memo_mutex);
  while (static_cast<int>(bernoulli_memo.size()) <= m) {
    const int mm = static_cast<int>(bernoulli_memo.size());
    Rational sum = 0;
    for (int j = 0; j < mm; ++j) sum += Rational(binomial(mm + 1, j)) * bernoulli_memo[j];
    bernoulli_memo.push_back(-sum / (mm + 1));
  }
  return bernoulli_memo[m];
}

Rational d_constant(int p, int k) {
  if (p < 1) throw ValidationError("d_constant: p must be positive");
  if (k < 0 || k > 2 * p + 1) {
    throw ValidationError("d_constant: k must lie in [0, 2p+1], got " + std::to_string(k));
  }
  if (k == 2 * p + 1) return Rational(2);
  const int i = k / 2;
  const int m = 2 * p - 2 * i;
  if (k % 2 == 0) {
    const int sign = ((p - i) % 2 == 0) ? 1 : -1;
    return Rational(sign) * euler_number(m) / Rational(BigInt(1) << m) / Rational(factorial(m));
  }
  const int sign = ((p - i + 1) % 2 == 0) ? 1 : -1;
  const Rational scale = Rational(2 * ((BigInt(1) << m) - 1)) / Rational(factorial(m));
  return Rational(sign) * scale * bernoulli_number(m);
}

double m_constant(int k, int p, double rho, double span) {
  if (p < 1 || k < 0 || k > p) {
    throw ValidationError("m_constant: need 0 <= k <= p and p >= 1");
  }
  if (!(rho >= 0.0)) throw ValidationError("m_constant: rho must be nonnegative");
  if (!(span > 0.0)) throw ValidationError("m_constant: span must be positive");
  const double ratio2 = (span / std::numbers::pi) * (span / std::numbers::pi);
  double sum = 0.0;
  double term = 1.0;
  for (int l = 0; l <= p - k; ++l) {
    sum += term;
    term *= ratio2;
  }
  return 2.0 * rho * std::numbers::pi / 3.0 * sum;
}

}  // namespace lfif
