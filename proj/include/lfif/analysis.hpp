#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lfif/fif.hpp"
#include "lfif/generators.hpp"

namespace lfif {

struct Domain {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Evaluable {
  std::function<double(double)> fn;
  Domain domain;
};

inline constexpr int kDefaultSupGrid = 4001;

// Uniform grid of `size` points over the domain with `include` merged in.
std::vector<double> dense_grid(const Domain& domain, int size, std::span<const double> include = {});

// Max |f - g| over the dense grid: a lower bound on the true sup norm.
double sup_norm_diff(const Evaluable& f, const Evaluable& g, int grid_size,
                     std::span<const double> include = {});
double sup_norm(const Evaluable& f, int grid_size, std::span<const double> include = {});

struct BoundContext {
  int p = 0;
  int k = 0;
  int N = 0;
  double alpha_inf = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  double mesh = 0.0;
};

struct BoundReport {
  std::string name;
  double lhs_measured = 0.0;
  double rhs_bound = 0.0;
  bool satisfied = false;
  BoundContext context;
};

BoundReport make_report(std::string name, double lhs, double rhs, const BoundContext& ctx);
BoundContext context_for(const LidstoneFif& fif, int k);

// 2 d_{2p,k} sup|g^{(2p)}| mesh^{2p-k}, 0 <= k <= 2p+1.
double classical_error_bound(int p, int k, double sup_g2p, double mesh);

// Measured ||d^k (g - L g)|| against classical_error_bound; k may be odd.
BoundReport classical_error_report(const Generator& g, const PiecewiseInterpolant& interp, int k,
                                   int grid_size = kDefaultSupGrid);

// ||l^{(2k)} - phi^{(2k)}|| <= |alpha| / (mu^{2k} - |alpha|) (||phi^{(2k)}|| + M_{2k,2p}).
// classical_sup defaults to the grid sup of phi^{(2k)}.
BoundReport fif_vs_classical_bound(const LidstoneFif& fif, int k,
                                   std::optional<double> classical_sup = std::nullopt,
                                   int grid_size = kDefaultSupGrid);

// ||l'^{(2k)} - l''^{(2k)}|| <= |a' - a''| / (mu^{2k} - |a'|) (||l''^{(2k)}|| + M_{2k,2p}).
BoundReport continuous_dependence_check(const LidstoneData& data, const ScalingVector& alpha1,
                                        const ScalingVector& alpha2, int k,
                                        int grid_size = kDefaultSupGrid);

// sup_x |d/d alpha_n q_n^{(2k)}(alpha_n, x)| <= M_{2k,2p}. The alpha-derivative
// does not depend on n or alpha, so one grid maximization covers every branch.
BoundReport qn_sensitivity_bound_check(const LidstoneFif& fif, int k,
                                       int grid_size = kDefaultSupGrid);

// Every bound of the suite for one model: sensitivity and FIF-vs-classical for
// k = 0..p, continuous dependence against alpha/2.
std::vector<BoundReport> all_bound_reports(const LidstoneFif& fif, int grid_size = kDefaultSupGrid);

// alpha_n = factor * a_n^{2p + exponent_offset}. The default sits close to the
// edge of the admissible region so the alpha-driven error term is visible.
struct AlphaRule {
  double factor = 0.9;
  int exponent_offset = 0;

  ScalingVector apply(const Partition& partition, int p) const;
  std::string describe() const;
  static AlphaRule parse(const std::string& text);
};

struct ConvergenceStudy {
  std::string generator;
  Domain domain;
  int p = 0;
  std::string alpha_rule;
  std::vector<int> N_values;
  // errors[k][i]: sup-norm error of order 2k at N_values[i].
  std::vector<std::vector<double>> errors;
  std::vector<double> fitted_slope;
  std::vector<double> intercept;
  std::vector<bool> degenerate;
  // Measured error against the generator-level estimate, per N and k.
  std::vector<BoundReport> bounds;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
// Least squares fit of log(e) on log(N).
LineFit fit_log_log(std::span<const int> N_values, std::span<const double> errors);

ConvergenceStudy convergence_study(const Generator& g, const Domain& domain, int p,
                                   std::vector<int> N_values, const AlphaRule& rule = {},
                                   int grid_size = kDefaultSupGrid);

}  // namespace lfif
