#include "lfif/fif.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/interpolators/pchip.hpp>

#include "lfif/lidstone.hpp"

namespace lfif {
namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double ScalingVector::max_abs() const {
  double m = 0.0;
  for (double a : alpha) m = std::max(m, std::abs(a));
  return m;
}

ThetaViolation::ThetaViolation(int branch, double alpha, double bound)
    : ValidationError("scaling factor alpha_" + std::to_string(branch) + " = " +
                      format_number(alpha) + " violates |alpha_n| < a_n^{2p} = " +
                      format_number(bound) + " on interval " + std::to_string(branch)),
      branch_(branch),
      alpha_(alpha),
      bound_(bound) {}

ToleranceNotReached::ToleranceNotReached(double achieved, int depth)
    : std::runtime_error("tolerance not reached after " + std::to_string(depth) +
                         " levels; achieved error bound " + format_number(achieved)),
      achieved_(achieved) {}

void validate_scaling(const Partition& partition, int p, const ScalingVector& scaling) {
  if (static_cast<int>(scaling.size()) != partition.intervals()) {
    throw ValidationError("scaling vector has " + std::to_string(scaling.size()) +
                          " entries but the partition has " +
                          std::to_string(partition.intervals()) + " intervals");
  }
  for (int n = 1; n <= partition.intervals(); ++n) {
    const double bound = std::pow(partition.ratio(n), 2 * p);
    const double a = scaling[n];
    if (!std::isfinite(a) || !(std::abs(a) < bound)) throw ThetaViolation(n, a, bound);
  }
}

LidstoneFif::LidstoneFif(LidstoneData data, ScalingVector scaling, std::vector<IfsBranch> branches)
    : data_(std::move(data)),
      scaling_(std::move(scaling)),
      branches_(std::move(branches)),
      classical_(build_classical(data_)) {
  const int N = intervals();
  const int p = data_.p();
  contractions_.assign(static_cast<std::size_t>(N), std::vector<double>(p + 1));
  sup_bounds_.assign(static_cast<std::size_t>(p + 1), 0.0);
  for (int n = 1; n <= N; ++n) {
    const IfsBranch& br = branch(n);
    for (int k = 0; k <= p; ++k) {
      contractions_[n - 1][k] = br.alpha / std::pow(br.a, 2 * k);
    }
  }
  for (int k = 0; k <= p; ++k) {
    double offsets = 0.0;
    for (int n = 1; n <= N; ++n) {
      offsets = std::max(offsets, branch(n).q.in_t().sup_bound_unit(2 * k) /
                                      std::pow(partition().width(n), 2 * k));
    }
    sup_bounds_[static_cast<std::size_t>(k)] = offsets / (1.0 - max_contraction(k));
  }
}

double LidstoneFif::contraction(int n, int k) const {
  return contractions_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
}

double LidstoneFif::max_contraction(int k) const {
  double m = 0.0;
  for (int n = 1; n <= intervals(); ++n) m = std::max(m, std::abs(contraction(n, k)));
  return m;
}

double LidstoneFif::apply_branch(int n, int k, double t, double y) const {
  const double h = partition().width(n);
  return contraction(n, k) * y + branch(n).q.in_t().derivative_at(t, 2 * k) / std::pow(h, 2 * k);
}

int LidstoneFif::check_order(int derivative_order) const {
  if (derivative_order < 0 || derivative_order % 2 != 0 || derivative_order > 2 * p()) {
    throw ValidationError("derivative order must be even and at most 2p = " +
                          std::to_string(2 * p()) + ", got " + std::to_string(derivative_order));
  }
  return derivative_order / 2;
}

EvalResult LidstoneFif::evaluate_detailed(double x, int derivative_order,
                                          const EvalOptions& opts) const {
  const int k = check_order(derivative_order);
  if (!(opts.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (opts.max_depth < 1) throw ValidationError("max_depth must be positive");
  const Partition& part = partition();
  const auto& unit = part.unit_nodes();

  int n = part.locate(x);
  double t = (x - part.node(n - 1)) / part.width(n);
  const double bound = sup_bound(k);
  const double left_end = data_.value(0, k);
  const double right_end = data_.value(intervals(), k);

  EvalResult r;
  double prod = 1.0;
  for (int depth = 1; depth <= opts.max_depth; ++depth) {
    // l^{(2k)}(L_n(u)) = c_n l^{(2k)}(u) + q_n^{(2k)}(u) / a_n^{2k}, u at unit coordinate t
    r.value += prod * apply_branch(n, k, t, 0.0);
    prod *= contraction(n, k);
    r.depth = depth;
    // Endpoint values of the fixed point are known exactly.
    if (prod == 0.0 || t == 0.0 || t == 1.0) {
      if (t == 0.0) r.value += prod * left_end;
      if (t == 1.0) r.value += prod * right_end;
      r.error_bound = 0.0;
      r.converged = true;
      return r;
    }
    r.error_bound = std::abs(prod) * bound;
    if (r.error_bound < opts.tolerance) {
      r.converged = true;
      return r;
    }
    n = part.locate_unit(t);
    t = (t - unit[n - 1]) / (unit[n] - unit[n - 1]);
  }
  return r;
}

double LidstoneFif::evaluate(double x, int derivative_order, const EvalOptions& opts) const {
  if (opts.method == EvalOptions::Method::GridFixedPoint) {
    const GridFunction g =
        eval_grid_fixed_point(*this, opts.grid_size, derivative_order, opts.sweeps, opts.tolerance);
    return g.interpolate(x);
  }
  const EvalResult r = evaluate_detailed(x, derivative_order, opts);
  if (!r.converged) throw ToleranceNotReached(r.error_bound, r.depth);
  return r.value;
}

double eval_fif(const LidstoneFif& fif, double x, int derivative_order, const EvalOptions& opts) {
  return fif.evaluate(x, derivative_order, opts);
}

LidstoneFif build_fif(const LidstoneData& data, const ScalingVector& scaling) {
  const Partition& part = data.partition();
  validate_scaling(part, data.p(), scaling);
  const int N = part.intervals();
  const double x0 = part.front();
  const double span = part.span();
  // Endpoint interpolant of (y_{0,2k}, y_{N,2k}) over [x_0, x_N].
  const Polynomial endpoint =
      lidstone_combination(data.node_values(0), data.node_values(N), span);
  std::vector<IfsBranch> branches;
  branches.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    // q_n^{(2k)}(x_0) = a_n^{2k} y_{n-1,2k} - alpha_n y_{0,2k}; the a_n^{2k} part
    // is the classical piece on [x_{n-1}, x_n] pulled back through L_n.
    const Polynomial pulled_back = lidstone_combination(data.node_values(n - 1),
                                                        data.node_values(n), part.width(n));
    std::vector<double> c = pulled_back.coefficients();
    const double alpha = scaling[n];
    if (alpha != 0.0) {
      for (std::size_t i = 0; i < c.size(); ++i) c[i] -= alpha * endpoint.coefficients()[i];
    }
    branches.push_back(IfsBranch{part.ratio(n), part.offset(n), alpha,
                                 IntervalPolynomial(x0, span, Polynomial(std::move(c)))});
  }
  return LidstoneFif(data, scaling, std::move(branches));
}

LidstoneFif assemble_fif(const LidstoneData& data, const ScalingVector& scaling,
                         std::vector<std::vector<double>> q_coefficients) {
  const Partition& part = data.partition();
  validate_scaling(part, data.p(), scaling);
  const int N = part.intervals();
  const int p = data.p();
  if (static_cast<int>(q_coefficients.size()) != N) {
    throw ValidationError("expected " + std::to_string(N) + " q_n coefficient arrays");
  }
  std::vector<IfsBranch> branches;
  for (int n = 1; n <= N; ++n) {
    auto& c = q_coefficients[static_cast<std::size_t>(n - 1)];
    if (static_cast<int>(c.size()) > 2 * p + 2) {
      throw ValidationError("q_" + std::to_string(n) + " has degree above 2p+1");
    }
    IfsBranch br{part.ratio(n), part.offset(n), scaling[n],
                 IntervalPolynomial(part.front(), part.span(), Polynomial(std::move(c)))};
    for (int k = 0; k <= p; ++k) {
      const double ak = std::pow(br.a, 2 * k);
      const double want0 = ak * data.value(n - 1, k) - br.alpha * data.value(0, k);
      const double wantN = ak * data.value(n, k) - br.alpha * data.value(N, k);
      const double got0 = br.q.value_at_t(0.0, 2 * k);
      const double gotN = br.q.value_at_t(1.0, 2 * k);
      const double scale = ak * (std::abs(data.value(n - 1, k)) + std::abs(data.value(n, k))) +
                           std::abs(br.alpha) * data.rho() + br.q.sup_bound(2 * k) * 1e-6;
      if (std::abs(got0 - want0) > 1e-9 * scale || std::abs(gotN - wantN) > 1e-9 * scale) {
        throw ValidationError("q_" + std::to_string(n) +
                              " violates the join-up conditions at derivative order " +
                              std::to_string(2 * k));
      }
    }
    branches.push_back(std::move(br));
  }
  return LidstoneFif(data, scaling, std::move(branches));
}

// ---------------------------------------------------------------------------
// Grid fixed point

struct GridFunction::Interpolator {
  boost::math::interpolators::pchip<std::vector<double>> pchip;
};

double GridFunction::interpolate(double x) const {
  if (x < x_.front() || x > x_.back()) {
    throw ValidationError("grid function evaluated outside its domain");
  }
  return interp_->pchip(x);
}

namespace {

using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

Pchip make_pchip(const std::vector<double>& x, const std::vector<double>& y) {
  return Pchip(std::vector<double>(x), std::vector<double>(y));
}

std::vector<double> build_grid(const Partition& part, int grid_size) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_size) + part.nodes().size());
  const double x0 = part.front();
  const double span = part.span();
  for (int i = 0; i < grid_size; ++i) grid.push_back(x0 + span * i / (grid_size - 1));
  grid.back() = part.back();
  // Snap near-coincident grid points onto the nodes, then merge in the rest.
  const double snap = 1e-9 * span / (grid_size - 1);
  for (double node : part.nodes()) {
    auto it = std::lower_bound(grid.begin(), grid.end(), node);
    bool snapped = false;
    if (it != grid.end() && std::abs(*it - node) <= snap) {
      *it = node;
      snapped = true;
    } else if (it != grid.begin() && std::abs(*(it - 1) - node) <= snap) {
      *(it - 1) = node;
      snapped = true;
    }
    if (!snapped) grid.insert(it, node);
  }
  return grid;
}

struct PullBack {
  int branch;
  double t;  // unit coordinate of L_n^{-1}(x)
  double u;  // L_n^{-1}(x)
};

std::vector<PullBack> pull_backs(const Partition& part, const std::vector<double>& pts) {
  std::vector<PullBack> out;
  out.reserve(pts.size());
  for (double x : pts) {
    const int n = part.locate(x);
    const double t = (x - part.node(n - 1)) / part.width(n);
    const double u = (t == 1.0) ? part.back() : part.front() + t * part.span();
    out.push_back({n, t, u});
  }
  return out;
}

std::vector<double> apply_once(const LidstoneFif& fif, int k, const std::vector<PullBack>& pb,
                               const Pchip& current) {
  std::vector<double> out(pb.size());
  for (std::size_t i = 0; i < pb.size(); ++i) {
    out[i] = fif.apply_branch(pb[i].branch, k, pb[i].t, current(pb[i].u));
  }
  return out;
}

}  // namespace

GridFunction eval_grid_fixed_point(const LidstoneFif& fif, int grid_size, int derivative_order,
                                   int sweeps, double tolerance) {
  const int N = fif.intervals();
  if (derivative_order < 0 || derivative_order % 2 != 0 || derivative_order > 2 * fif.p()) {
    throw ValidationError("derivative order must be even and at most 2p");
  }
  if (grid_size < N + 1 || grid_size < 4) {
    throw ValidationError("grid of " + std::to_string(grid_size) +
                          " points is too coarse; need at least max(N+1, 4)");
  }
  if (sweeps < 1) throw ValidationError("sweeps must be positive");
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  const int k = derivative_order / 2;
  const double cmax = fif.max_contraction(k);
  if (!(cmax < 1.0)) throw ValidationError("operator is not contractive");

  const Partition& part = fif.partition();
  GridFunction g;
  g.order_ = derivative_order;
  g.tolerance_ = tolerance;
  g.contraction_ = cmax;
  g.x_ = build_grid(part, grid_size);
  const auto pb = pull_backs(part, g.x_);
  const double left_end = fif.data().value(0, k);
  const double right_end = fif.data().value(N, k);

  g.values_.resize(g.x_.size());
  for (std::size_t i = 0; i < g.x_.size(); ++i) {
    g.values_[i] = fif.classical().evaluate(g.x_[i], derivative_order);
  }
  g.values_.front() = left_end;
  g.values_.back() = right_end;

  for (int s = 0; s < sweeps; ++s) {
    const Pchip current = make_pchip(g.x_, g.values_);
    std::vector<double> next = apply_once(fif, k, pb, current);
    next.front() = left_end;
    next.back() = right_end;
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      diff = std::max(diff, std::abs(next[i] - g.values_[i]));
    }
    g.values_ = std::move(next);
    g.sweep_differences_.push_back(diff);
    if (diff < tolerance) {
      g.converged_ = true;
      break;
    }
  }

  g.interp_ = std::make_shared<const GridFunction::Interpolator>(
      GridFunction::Interpolator{make_pchip(g.x_, g.values_)});

  // Off-grid residual of the interpolated iterate at three points per cell.
  std::vector<double> probes;
  probes.reserve(3 * g.x_.size());
  for (std::size_t i = 0; i + 1 < g.x_.size(); ++i) {
    const double lo = g.x_[i];
    const double w = g.x_[i + 1] - lo;
    for (double f : {0.25, 0.5, 0.75}) probes.push_back(lo + f * w);
  }
  const auto probe_pb = pull_backs(part, probes);
  const std::vector<double> mapped = apply_once(fif, k, probe_pb, g.interp_->pchip);
  double residual = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    residual = std::max(residual, std::abs(mapped[i] - g.interp_->pchip(probes[i])));
  }
  g.interpolation_error_ = residual / (1.0 - cmax);
  return g;
}

std::vector<double> apply_operator(const LidstoneFif& fif, const GridFunction& g) {
  const int k = g.derivative_order() / 2;
  const auto pb = pull_backs(fif.partition(), g.x());
  std::vector<double> out = apply_once(fif, k, pb, g.interp_->pchip);
  out.front() = fif.data().value(0, k);
  out.back() = fif.data().value(fif.intervals(), k);
  return out;
}

// ---------------------------------------------------------------------------
// Random iteration

AttractorSample chaos_game(const LidstoneFif& fif, int iterations, std::uint64_t seed, int burn_in,
                           int derivative_order) {
  if (iterations < 1) throw ValidationError("chaos_game needs at least one iteration");
  if (burn_in < 0) throw ValidationError("burn_in must be nonnegative");
  if (derivative_order < 0 || derivative_order % 2 != 0 || derivative_order > 2 * fif.p()) {
    throw ValidationError("derivative order must be even and at most 2p");
  }
  const int k = derivative_order / 2;
  const Partition& part = fif.partition();
  const auto& unit = part.unit_nodes();

  AttractorSample s;
  s.seed = seed;
  s.iterations = iterations;
  s.burn_in = burn_in;
  s.derivative_order = derivative_order;
  s.generator = kChaosGameGenerator;
  s.points.reserve(static_cast<std::size_t>(std::max(0, iterations - burn_in)));

  std::mt19937_64 rng(seed);
  double t = 0.0;
  double y = fif.data().value(0, k);
  for (int i = 0; i < iterations; ++i) {
    // Top 53 bits as a uniform double in [0, 1); interval n has probability a_n.
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const int n = part.locate_unit(r);
    y = fif.apply_branch(n, k, t, y);
    t = unit[n - 1] + t * (unit[n] - unit[n - 1]);
    if (i >= burn_in) {
      const double x = (t == 1.0) ? part.back() : part.front() + t * part.span();
      s.points.emplace_back(x, y);
    }
  }
  return s;
}

}  // namespace lfif
