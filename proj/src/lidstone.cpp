#include "lfif/lidstone.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>
#include <string>

#include "lfif/errors.hpp"

namespace lfif {
namespace {

struct LidstoneTable {
  std::mutex mutex;
  // deque keeps references stable while the table grows
  std::deque<RationalPoly> direct{RationalPoly({Rational(0), Rational(1)})};
  std::deque<RationalPoly> reflected{RationalPoly({Rational(1), Rational(-1)})};
  std::deque<std::vector<double>> direct_d{{0.0, 1.0}};
  std::deque<std::vector<double>> reflected_d{{1.0, -1.0}};

  void extend_to(int l) {
    while (static_cast<int>(direct.size()) <= l) {
      RationalPoly twice = direct.back().antiderivative().antiderivative();
      // Twice integrated from 0 vanishes at 0; subtract the linear term fixing x = 1.
      const Rational at_one = twice(Rational(1));
      RationalPoly next = twice - RationalPoly({Rational(0), at_one});
      reflected.push_back(next.reflected());
      direct_d.push_back(next.to_doubles());
      reflected_d.push_back(reflected.back().to_doubles());
      direct.push_back(std::move(next));
    }
  }
};

LidstoneTable& table() {
  static LidstoneTable t;
  return t;
}

void check_order(int l) {
  if (l < 0) throw ValidationError("Lidstone order must be nonnegative, got " + std::to_string(l));
}

}  // namespace

const RationalPoly& lidstone_poly(int l) {
  check_order(l);
  auto& t = table();
  std::lock_guard lock(t.mutex);
  t.extend_to(l);
  return t.direct[static_cast<std::size_t>(l)];
}

const RationalPoly& reflected_lidstone_poly(int l) {
  check_order(l);
  auto& t = table();
  std::lock_guard lock(t.mutex);
  t.extend_to(l);
  return t.reflected[static_cast<std::size_t>(l)];
}

double lidstone_poly_fourier(int l, double x, int terms) {
  if (l < 1) throw ValidationError("sine series of Lambda_l requires l >= 1");
  if (terms < 1) throw ValidationError("sine series needs at least one term");
  double sum = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    sum += sign / std::pow(static_cast<double>(n), 2 * l + 1) *
           std::sin(n * std::numbers::pi * x);
  }
  const double lead = 2.0 / std::pow(std::numbers::pi, 2 * l + 1);
  return ((l % 2 == 0) ? 1.0 : -1.0) * lead * sum;
}

double lidstone_bound(int l) {
  if (l < 1) throw ValidationError("lidstone_bound requires l >= 1");
  return 1.0 / (3.0 * std::pow(std::numbers::pi, 2 * l - 1));
}

Polynomial lidstone_combination(std::span<const double> left, std::span<const double> right,
                                double width) {
  if (left.size() != right.size() || left.empty()) {
    throw ValidationError("Lidstone endpoint lists must be nonempty and of equal length");
  }
  const int p = static_cast<int>(left.size()) - 1;
  auto& t = table();
  std::vector<double> coeffs(static_cast<std::size_t>(2 * p + 2), 0.0);
  std::lock_guard lock(t.mutex);
  t.extend_to(p);
  double scale = 1.0;
  for (int l = 0; l <= p; ++l) {
    const auto& dir = t.direct_d[static_cast<std::size_t>(l)];
    const auto& ref = t.reflected_d[static_cast<std::size_t>(l)];
    const double wl = left[static_cast<std::size_t>(l)] * scale;
    const double wr = right[static_cast<std::size_t>(l)] * scale;
    for (std::size_t i = 0; i < ref.size(); ++i) coeffs[i] += wl * ref[i];
    for (std::size_t i = 0; i < dir.size(); ++i) coeffs[i] += wr * dir[i];
    scale *= width * width;
  }
  return Polynomial(std::move(coeffs));
}

IntervalPolynomial two_point_interpolant(const TwoPointLidstoneSpec& spec) {
  if (!(spec.x0 < spec.xN)) throw ValidationError("two_point_interpolant: need x0 < xN");
  const double width = spec.xN - spec.x0;
  return IntervalPolynomial(spec.x0, width,
                            lidstone_combination(spec.left_values, spec.right_values, width));
}

}  // namespace lfif
