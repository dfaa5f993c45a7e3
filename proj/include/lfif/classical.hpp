#pragma once

#include <cstddef>
#include <vector>

#include "lfif/polynomial.hpp"

namespace lfif {

// Strictly increasing abscissas x_0 < ... < x_N, N >= 1. Intervals are
// numbered n = 1..N with I_n = [x_{n-1}, x_n].
class Partition {
 public:
  explicit Partition(std::vector<double> nodes);
  static Partition uniform(double x0, double xN, int intervals);

  int intervals() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double node(int n) const { return nodes_[static_cast<std::size_t>(n)]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  double span() const { return nodes_.back() - nodes_.front(); }

  double width(int n) const { return node(n) - node(n - 1); }
  // a_n = (x_n - x_{n-1}) / (x_N - x_0)
  double ratio(int n) const { return width(n) / span(); }
  // b_n = (x_N x_{n-1} - x_0 x_n) / (x_N - x_0), so L_n(x) = a_n x + b_n.
  double offset(int n) const;
  double map(int n, double x) const { return ratio(n) * x + offset(n); }

  // Norm of the partition: the largest interval width.
  double mesh() const;
  // min_n a_n
  double min_ratio() const;
  bool is_uniform(double rel_tol = 1e-12) const;
  bool contains(double x) const { return x >= front() && x <= back(); }

  // Interval owning x. Interior nodes go to the right-hand interval; x_N to N.
  int locate(double x) const;

  // Node coordinates rescaled to [0, 1]; the first is exactly 0, the last exactly 1.
  const std::vector<double>& unit_nodes() const { return unit_nodes_; }
  // Interval owning unit coordinate t, same tie rule as locate().
  int locate_unit(double t) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> unit_nodes_;
};

// Prescribed even derivatives y_{n,2k} at the partition nodes.
class LidstoneData {
 public:
  LidstoneData(Partition partition, int p, std::vector<std::vector<double>> values);

  const Partition& partition() const { return partition_; }
  int p() const { return p_; }
  int intervals() const { return partition_.intervals(); }
  // y_{n,2k}
  double value(int n, int k) const {
    return values_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }
  const std::vector<double>& node_values(int n) const {
    return values_[static_cast<std::size_t>(n)];
  }
  const std::vector<std::vector<double>>& values() const { return values_; }

  // rho = max_k max(|y_{0,2k}|, |y_{N,2k}|)
  double rho() const;

 private:
  Partition partition_;
  int p_;
  std::vector<std::vector<double>> values_;
};

// Piecewise Lidstone interpolant: one polynomial of degree <= 2p+1 per interval.
class PiecewiseInterpolant {
 public:
  const Partition& partition() const { return partition_; }
  int p() const { return p_; }
  const IntervalPolynomial& piece(int n) const { return pieces_[static_cast<std::size_t>(n - 1)]; }

  // Even orders 0, 2, ..., 2p only.
  double evaluate(double x, int derivative_order = 0) const;
  // Any order, including odd ones; used by error-bound checks.
  double evaluate_any_order(double x, int derivative_order) const;
  // Certified upper bound on the sup norm of the given derivative.
  double sup_bound(int derivative_order) const;

 private:
  friend PiecewiseInterpolant build_classical(const LidstoneData& data);
  PiecewiseInterpolant(Partition partition, int p) : partition_(std::move(partition)), p_(p) {}

  Partition partition_;
  int p_;
  std::vector<IntervalPolynomial> pieces_;
};

PiecewiseInterpolant build_classical(const LidstoneData& data);

// Local basis function r_{p,n,l}(x); build_classical equals
// sum_{n,l} r_{p,n,l}(x) y_{n,2l}.
double basis_function(const Partition& partition, int p, int n, int l, double x);

double evaluate_piecewise(const PiecewiseInterpolant& f, double x, int derivative_order = 0);

}  // namespace lfif
