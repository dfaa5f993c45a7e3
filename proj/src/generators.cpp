#include "lfif/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lfif/errors.hpp"
#include "lfif/polynomial.hpp"

namespace lfif {
namespace {

// d^r/dx^r sin(x)
double sin_derivative(double x, int r) {
  switch (r % 4) {
    case 0: return std::sin(x);
    case 1: return std::cos(x);
    case 2: return -std::sin(x);
    default: return -std::cos(x);
  }
}

double sinc_derivative(double x, int m) {
  if (std::abs(x) < 0.5) {
    // Taylor series sum_j (-1)^j x^{2j} / (2j+1)!, differentiated termwise.
    double sum = 0.0;
    for (int j = 0; j < 30; ++j) {
      const int power = 2 * j;
      if (power < m) continue;
      double coeff = ((j % 2 == 0) ? 1.0 : -1.0) / std::tgamma(2.0 * j + 2.0);
      for (int i = 0; i < m; ++i) coeff *= power - i;
      sum += coeff * std::pow(x, power - m);
    }
    return sum;
  }
  // Leibniz rule on sin(x) * x^{-1}: (x^{-1})^{(j)} = (-1)^j j! x^{-(j+1)}.
  double sum = 0.0;
  double binom = 1.0;
  double inv_deriv = 1.0 / x;
  for (int j = 0; j <= m; ++j) {
    sum += binom * sin_derivative(x, m - j) * inv_deriv;
    binom = binom * (m - j) / (j + 1);
    inv_deriv *= -(j + 1) / x;
  }
  return sum;
}

// Fornberg's recursion for finite-difference weights at 0 on the given stencil.
std::vector<double> fd_weights(const std::vector<double>& stencil, int order) {
  const int n = static_cast<int>(stencil.size());
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(order + 1)));
  double c1 = 1.0;
  double c4 = stencil[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = stencil[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = stencil[i] - stencil[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

}  // namespace

double central_difference(const std::function<double(double)>& f, double x, int order, double h) {
  if (order == 0) return f(x);
  // Central stencils of width 2r+1 reach accuracy order 6 for r = floor((order+1)/2) + 2.
  const int r = (order + 1) / 2 + 2;
  std::vector<double> stencil;
  for (int i = -r; i <= r; ++i) stencil.push_back(static_cast<double>(i));
  const std::vector<double> w = fd_weights(stencil, order);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) sum += w[static_cast<std::size_t>(i + r)] * f(x + i * h);
  return sum / std::pow(h, order);
}

double Generator::eval(double x, int order) const {
  if (order > max_order) {
    throw ValidationError("generator '" + name + "' supports derivatives up to order " +
                          std::to_string(max_order) + ", requested " + std::to_string(order));
  }
  if (derivative) return derivative(x, order);
  if (order == 0) return value(x);
  throw ValidationError("generator '" + name + "' has no analytic derivatives");
}

Generator sinc_generator() {
  Generator g;
  g.name = "sinc-shifted";
  g.value = [](double x) { return sinc_derivative(x, 0); };
  g.derivative = [](double x, int m) { return sinc_derivative(x, m); };
  g.max_order = 4 * kMaxHalfOrder;
  return g;
}

Generator polynomial_generator(std::vector<double> coefficients) {
  Polynomial poly(std::move(coefficients));
  std::ostringstream name;
  name << "poly:";
  for (std::size_t i = 0; i < poly.coefficients().size(); ++i) {
    name << (i ? "," : "") << poly.coefficients()[i];
  }
  Generator g;
  g.name = name.str();
  g.value = [poly](double x) { return poly(x); };
  g.derivative = [poly](double x, int m) { return poly.derivative_at(x, m); };
  g.max_order = 4 * kMaxHalfOrder;
  return g;
}

Generator generator_from_name(const std::string& name) {
  if (name == "sinc-shifted" || name == "sinc") return sinc_generator();
  if (name.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream ss(name.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) {
        throw ValidationError("bad polynomial coefficient '" + item + "'");
      }
      coeffs.push_back(v);
    }
    if (coeffs.empty()) throw ValidationError("polynomial generator needs coefficients");
    return polynomial_generator(std::move(coeffs));
  }
  throw ValidationError("unknown generator '" + name + "'");
}

GeneratedData generate_data(const Generator& g, const Partition& partition, int p) {
  if (2 * p > g.max_order) {
    throw ValidationError("generator '" + g.name + "' is not differentiable to order 2p = " +
                          std::to_string(2 * p));
  }
  const double h = partition.span() * 1e-3;
  std::vector<std::vector<double>> values;
  for (double x : partition.nodes()) {
    std::vector<double> row;
    for (int k = 0; k <= p; ++k) {
      row.push_back(g.analytic() ? g.derivative(x, 2 * k) : central_difference(g.value, x, 2 * k, h));
    }
    values.push_back(std::move(row));
  }
  return GeneratedData{LidstoneData(partition, p, std::move(values)), !g.analytic()};
}

GeneratedData generate_data(const GeneratorSpec& spec) {
  return generate_data(generator_from_name(spec.name), Partition::uniform(spec.x0, spec.xN, spec.N),
                       spec.p);
}

}  // namespace lfif
