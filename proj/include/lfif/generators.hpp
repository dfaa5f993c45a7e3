#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lfif/classical.hpp"

namespace lfif {

// A data-generating function. `derivative(x, m)` returns the m-th derivative;
// when it is empty, derivatives are estimated from `value` by central
// differences and the resulting data is flagged.
struct Generator {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double, int)> derivative;
  // Highest derivative order the generator supports.
  int max_order = 0;

  bool analytic() const { return static_cast<bool>(derivative); }
  double eval(double x, int order) const;
};

// sin(x)/x with closed-form derivatives of every order.
Generator sinc_generator();
// Ascending power-basis coefficients.
Generator polynomial_generator(std::vector<double> coefficients);
// "sinc-shifted" or "poly:c0,c1,...".
Generator generator_from_name(const std::string& name);

struct GeneratorSpec {
  std::string name = "sinc-shifted";
  double x0 = 5.0;
  double xN = 25.0;
  int p = 2;
  int N = 10;
};

struct GeneratedData {
  LidstoneData data;
  bool finite_difference_fallback = false;
};

// Samples y_{n,2k} = g^{(2k)}(x_n) on the given partition.
GeneratedData generate_data(const Generator& g, const Partition& partition, int p);
// Uniform nodes over [x0, xN].
GeneratedData generate_data(const GeneratorSpec& spec);

// Sixth-order central difference estimate of g^{(order)}(x) with step h.
double central_difference(const std::function<double(double)>& f, double x, int order, double h);

}  // namespace lfif
