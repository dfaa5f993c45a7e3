#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lfif/classical.hpp"
#include "lfif/errors.hpp"
#include "lfif/polynomial.hpp"

namespace lfif {

// Vertical scaling factors alpha_1..alpha_N, one per interval.
struct ScalingVector {
  std::vector<double> alpha;

  std::size_t size() const { return alpha.size(); }
  double operator[](int n) const { return alpha[static_cast<std::size_t>(n - 1)]; }
  double max_abs() const;
};

// alpha_n outside the open region |alpha_n| < a_n^{2p}.
class ThetaViolation : public ValidationError {
 public:
  ThetaViolation(int branch, double alpha, double bound);
  int branch() const { return branch_; }
  double alpha() const { return alpha_; }
  double bound() const { return bound_; }

 private:
  int branch_;
  double alpha_;
  double bound_;
};

// Throws ThetaViolation for the first offending interval, ValidationError on size mismatch.
void validate_scaling(const Partition& partition, int p, const ScalingVector& scaling);

// w_n(x, y) = (a_n x + b_n, alpha_n y + q_n(x)).
struct IfsBranch {
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  // q_n over [x_0, x_N], stored in t = (x - x_0) / (x_N - x_0).
  IntervalPolynomial q;
};

struct EvalOptions {
  enum class Method { RecursiveAddress, GridFixedPoint };
  double tolerance = 1e-12;
  int max_depth = 512;
  Method method = Method::RecursiveAddress;
  // Only used by the grid method.
  int grid_size = 4001;
  int sweeps = 64;
};

struct EvalResult {
  double value = 0.0;
  // Certified bound on the truncation error of the address expansion.
  double error_bound = 0.0;
  int depth = 0;
  bool converged = false;
};

class ToleranceNotReached : public std::runtime_error {
 public:
  ToleranceNotReached(double achieved, int depth);
  double achieved_bound() const { return achieved_; }

 private:
  double achieved_;
};

class LidstoneFif {
 public:
  const LidstoneData& data() const { return data_; }
  const Partition& partition() const { return data_.partition(); }
  int p() const { return data_.p(); }
  int intervals() const { return data_.intervals(); }
  const ScalingVector& scaling() const { return scaling_; }
  const std::vector<IfsBranch>& branches() const { return branches_; }
  const IfsBranch& branch(int n) const { return branches_[static_cast<std::size_t>(n - 1)]; }
  // alpha = 0 reference interpolant for the same data.
  const PiecewiseInterpolant& classical() const { return classical_; }

  // alpha_n / a_n^{2k}: vertical contraction of F_{n,2k}.
  double contraction(int n, int k) const;
  double max_contraction(int k) const;
  // Certified bound on sup |l^{(2k)}| from the fixed-point equation.
  double sup_bound(int k) const { return sup_bounds_[static_cast<std::size_t>(k)]; }

  // F_{n,2k}(x, y) = (alpha_n y + q_n^{(2k)}(x)) / a_n^{2k} with x given by its
  // unit coordinate t in [0, 1].
  double apply_branch(int n, int k, double t, double y) const;

  EvalResult evaluate_detailed(double x, int derivative_order, const EvalOptions& opts = {}) const;
  // Throws ToleranceNotReached if the address expansion is not certified within
  // opts.tolerance after opts.max_depth levels.
  double evaluate(double x, int derivative_order = 0, const EvalOptions& opts = {}) const;

 private:
  friend LidstoneFif build_fif(const LidstoneData&, const ScalingVector&);
  friend LidstoneFif assemble_fif(const LidstoneData&, const ScalingVector&,
                                  std::vector<std::vector<double>>);
  LidstoneFif(LidstoneData data, ScalingVector scaling, std::vector<IfsBranch> branches);

  int check_order(int derivative_order) const;

  LidstoneData data_;
  ScalingVector scaling_;
  std::vector<IfsBranch> branches_;
  PiecewiseInterpolant classical_;
  std::vector<std::vector<double>> contractions_;
  std::vector<double> sup_bounds_;
};

LidstoneFif build_fif(const LidstoneData& data, const ScalingVector& scaling);

// Rebuilds a model from stored q_n coefficients (in t). The coefficients must
// satisfy the join-up conditions for the given data and scaling.
LidstoneFif assemble_fif(const LidstoneData& data, const ScalingVector& scaling,
                         std::vector<std::vector<double>> q_coefficients);

double eval_fif(const LidstoneFif& fif, double x, int derivative_order = 0,
                const EvalOptions& opts = {});

// Samples of l^{(2k)} on a grid holding every partition node, obtained by
// iterating the Read-Bajraktarevic operator. Off-grid values are read through
// a monotone cubic (PCHIP) interpolant of the current iterate.
class GridFunction {
 public:
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& values() const { return values_; }
  int derivative_order() const { return order_; }
  int sweeps_performed() const { return static_cast<int>(sweep_differences_.size()); }
  // Sup-norm change produced by each sweep.
  const std::vector<double>& sweep_differences() const { return sweep_differences_; }
  double contraction_bound() const { return contraction_; }
  double tolerance() const { return tolerance_; }
  bool converged() const { return converged_; }
  // Estimated error of interpolate() against the true fixed point: off-grid
  // operator residual divided by (1 - contraction).
  double interpolation_error() const { return interpolation_error_; }

  double interpolate(double x) const;

 private:
  friend GridFunction eval_grid_fixed_point(const LidstoneFif&, int, int, int, double);
  friend std::vector<double> apply_operator(const LidstoneFif&, const GridFunction&);
  struct Interpolator;

  std::vector<double> x_;
  std::vector<double> values_;
  int order_ = 0;
  std::vector<double> sweep_differences_;
  double contraction_ = 0.0;
  double tolerance_ = 0.0;
  bool converged_ = false;
  double interpolation_error_ = 0.0;
  std::shared_ptr<const Interpolator> interp_;
};

GridFunction eval_grid_fixed_point(const LidstoneFif& fif, int grid_size, int derivative_order,
                                   int sweeps, double tolerance = 1e-12);

// Applies the operator T^{(2k)} once to the PCHIP interpolant of `g`, at the
// points of `g`'s grid (fixed-point residual checks).
std::vector<double> apply_operator(const LidstoneFif& fif, const GridFunction& g);

struct AttractorSample {
  std::vector<std::pair<double, double>> points;
  std::uint64_t seed = 0;
  int iterations = 0;
  int burn_in = 0;
  int derivative_order = 0;
  std::string generator;
};

inline constexpr const char* kChaosGameGenerator = "mt19937_64";

// Random iteration from (x_0, y_{0,2k}); branch n is chosen with probability a_n.
AttractorSample chaos_game(const LidstoneFif& fif, int iterations, std::uint64_t seed,
                           int burn_in, int derivative_order = 0);

}  // namespace lfif
