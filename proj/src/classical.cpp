#include "lfif/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfif/errors.hpp"
#include "lfif/lidstone.hpp"

namespace lfif {

Partition::Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ValidationError("partition needs at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw ValidationError("partition nodes must be finite");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw ValidationError("partition nodes must be strictly increasing (node " +
                            std::to_string(i) + ")");
    }
  }
  const double s = span();
  unit_nodes_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) unit_nodes_[i] = (nodes_[i] - nodes_[0]) / s;
  unit_nodes_.front() = 0.0;
  unit_nodes_.back() = 1.0;
}

Partition Partition::uniform(double x0, double xN, int intervals) {
  if (intervals < 1) throw ValidationError("uniform partition needs at least one interval");
  if (!(x0 < xN)) throw ValidationError("uniform partition needs x0 < xN");
  std::vector<double> nodes(static_cast<std::size_t>(intervals + 1));
  for (int i = 0; i <= intervals; ++i) {
    nodes[static_cast<std::size_t>(i)] = x0 + (xN - x0) * i / intervals;
  }
  nodes.back() = xN;
  return Partition(std::move(nodes));
}

double Partition::offset(int n) const {
  return (back() * node(n - 1) - front() * node(n)) / span();
}

double Partition::mesh() const {
  double m = 0.0;
  for (int n = 1; n <= intervals(); ++n) m = std::max(m, width(n));
  return m;
}

double Partition::min_ratio() const {
  double m = 1.0;
  for (int n = 1; n <= intervals(); ++n) m = std::min(m, ratio(n));
  return m;
}

bool Partition::is_uniform(double rel_tol) const {
  const double h = span() / intervals();
  for (int n = 1; n <= intervals(); ++n) {
    if (std::abs(width(n) - h) > rel_tol * h) return false;
  }
  return true;
}

int Partition::locate(double x) const {
  if (!contains(x)) throw ValidationError("point " + std::to_string(x) + " is outside the domain");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  int n = static_cast<int>(it - nodes_.begin());
  return std::min(n, intervals());
}

int Partition::locate_unit(double t) const {
  auto it = std::upper_bound(unit_nodes_.begin(), unit_nodes_.end(), t);
  int n = static_cast<int>(it - unit_nodes_.begin());
  return std::clamp(n, 1, intervals());
}

LidstoneData::LidstoneData(Partition partition, int p, std::vector<std::vector<double>> values)
    : partition_(std::move(partition)), p_(p), values_(std::move(values)) {
  if (p_ < 1 || p_ > kMaxHalfOrder) {
    throw ValidationError("p must lie in [1, " + std::to_string(kMaxHalfOrder) + "], got " +
                          std::to_string(p_));
  }
  if (static_cast<int>(values_.size()) != partition_.intervals() + 1) {
    throw ValidationError("data has " + std::to_string(values_.size()) + " rows but partition has " +
                          std::to_string(partition_.intervals() + 1) + " nodes");
  }
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (static_cast<int>(values_[n].size()) != p_ + 1) {
      throw ValidationError("row " + std::to_string(n) + " must hold p+1 = " +
                            std::to_string(p_ + 1) + " values");
    }
    for (double v : values_[n]) {
      if (!std::isfinite(v)) throw ValidationError("data values must be finite");
    }
  }
}

double LidstoneData::rho() const {
  double r = 0.0;
  for (double v : values_.front()) r = std::max(r, std::abs(v));
  for (double v : values_.back()) r = std::max(r, std::abs(v));
  return r;
}

PiecewiseInterpolant build_classical(const LidstoneData& data) {
  PiecewiseInterpolant f(data.partition(), data.p());
  const Partition& part = data.partition();
  f.pieces_.reserve(static_cast<std::size_t>(part.intervals()));
  for (int n = 1; n <= part.intervals(); ++n) {
    const double h = part.width(n);
    f.pieces_.emplace_back(part.node(n - 1), h,
                           lidstone_combination(data.node_values(n - 1), data.node_values(n), h));
  }
  return f;
}

double PiecewiseInterpolant::evaluate_any_order(double x, int derivative_order) const {
  if (derivative_order < 0) throw ValidationError("derivative order must be nonnegative");
  const int n = partition_.locate(x);
  const double t = (x - partition_.node(n - 1)) / partition_.width(n);
  return piece(n).value_at_t(t, derivative_order);
}

double PiecewiseInterpolant::evaluate(double x, int derivative_order) const {
  if (derivative_order < 0 || derivative_order % 2 != 0 || derivative_order > 2 * p_) {
    throw ValidationError("derivative order must be even and at most 2p, got " +
                          std::to_string(derivative_order));
  }
  return evaluate_any_order(x, derivative_order);
}

double PiecewiseInterpolant::sup_bound(int derivative_order) const {
  double b = 0.0;
  for (const auto& piece : pieces_) b = std::max(b, piece.sup_bound(derivative_order));
  return b;
}

double evaluate_piecewise(const PiecewiseInterpolant& f, double x, int derivative_order) {
  return f.evaluate(x, derivative_order);
}

double basis_function(const Partition& partition, int p, int n, int l, double x) {
  const int N = partition.intervals();
  if (n < 0 || n > N) throw ValidationError("basis_function: node index out of range");
  if (l < 0 || l > p) throw ValidationError("basis_function: order index out of range");
  if (!partition.contains(x)) throw ValidationError("basis_function: x outside the domain");
  const RationalPoly& lambda = lidstone_poly(l);
  if (n >= 1 && x >= partition.node(n - 1) && x <= partition.node(n)) {
    const double h = partition.width(n);
    return lambda.evaluate((x - partition.node(n - 1)) / h) * std::pow(h, 2 * l);
  }
  if (n <= N - 1 && x >= partition.node(n) && x <= partition.node(n + 1)) {
    const double h = partition.width(n + 1);
    return lambda.evaluate((partition.node(n + 1) - x) / h) * std::pow(h, 2 * l);
  }
  return 0.0;
}

}  // namespace lfif
