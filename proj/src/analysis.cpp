#include "lfif/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <sstream>

#include "lfif/errors.hpp"
#include "lfif/lidstone.hpp"
#include "lfif/numbers.hpp"

namespace lfif {
namespace {

constexpr double kReportSlack = 1e-9;
// Errors below this fraction of the derivative's magnitude count as rounding noise.
constexpr double kDegenerateRelative = 1e-11;

Domain domain_of(const Partition& part) { return {part.front(), part.back()}; }

Evaluable fif_derivative(const LidstoneFif& fif, int k) {
  return {[&fif, k](double x) { return fif.evaluate(x, 2 * k); }, domain_of(fif.partition())};
}

Evaluable classical_derivative(const PiecewiseInterpolant& f, int order) {
  return {[&f, order](double x) { return f.evaluate_any_order(x, order); },
          domain_of(f.partition())};
}

// Denominator mu^{2k} - |alpha|; the estimates need it positive.
double gap(const Partition& part, int k, double alpha_inf, const char* what) {
  const double g = std::pow(part.min_ratio(), 2 * k) - alpha_inf;
  if (!(g > 0.0)) {
    throw ValidationError(std::string(what) + ": needs |alpha|_inf < mu^{2k} (k = " +
                          std::to_string(k) + ")");
  }
  return g;
}

}  // namespace

std::vector<double> dense_grid(const Domain& domain, int size, std::span<const double> include) {
  if (size < 2) throw ValidationError("grid needs at least two points");
  if (!(domain.lo < domain.hi)) throw ValidationError("grid domain must be nonempty");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(size) + include.size());
  for (int i = 0; i < size; ++i) {
    grid.push_back(domain.lo + (domain.hi - domain.lo) * i / (size - 1));
  }
  grid.back() = domain.hi;
  for (double x : include) {
    if (x < domain.lo || x > domain.hi) throw ValidationError("included point outside the grid");
    grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double sup_norm_diff(const Evaluable& f, const Evaluable& g, int grid_size,
                     std::span<const double> include) {
  if (!(f.domain == g.domain)) throw ValidationError("sup_norm_diff: domain mismatch");
  double m = 0.0;
  for (double x : dense_grid(f.domain, grid_size, include)) {
    m = std::max(m, std::abs(f.fn(x) - g.fn(x)));
  }
  return m;
}

double sup_norm(const Evaluable& f, int grid_size, std::span<const double> include) {
  return sup_norm_diff(f, {[](double) { return 0.0; }, f.domain}, grid_size, include);
}

BoundReport make_report(std::string name, double lhs, double rhs, const BoundContext& ctx) {
  return {std::move(name), lhs, rhs, lhs <= rhs * (1.0 + kReportSlack), ctx};
}

BoundContext context_for(const LidstoneFif& fif, int k) {
  const Partition& part = fif.partition();
  return {fif.p(),          k,          part.intervals(), fif.scaling().max_abs(),
          part.min_ratio(), fif.data().rho(), part.mesh()};
}

double classical_error_bound(int p, int k, double sup_g2p, double mesh) {
  if (k < 0 || k > 2 * p + 1) {
    throw ValidationError("classical_error_bound: k must lie in [0, 2p+1]");
  }
  if (!(sup_g2p >= 0.0)) throw ValidationError("classical_error_bound: sup must be nonnegative");
  if (!(mesh > 0.0)) throw ValidationError("classical_error_bound: mesh must be positive");
  return 2.0 * to_double(d_constant(p, k)) * sup_g2p * std::pow(mesh, 2 * p - k);
}

BoundReport classical_error_report(const Generator& g, const PiecewiseInterpolant& interp, int k,
                                   int grid_size) {
  const Partition& part = interp.partition();
  const int p = interp.p();
  const Domain dom = domain_of(part);
  const double sup_g2p = sup_norm({[&g, p](double x) { return g.eval(x, 2 * p); }, dom}, grid_size,
                                  part.nodes());
  const double lhs = sup_norm_diff({[&g, k](double x) { return g.eval(x, k); }, dom},
                                   classical_derivative(interp, k), grid_size, part.nodes());
  BoundContext ctx{p, k, part.intervals(), 0.0, part.min_ratio(), 0.0, part.mesh()};
  return make_report("classical_error", lhs, classical_error_bound(p, k, sup_g2p, part.mesh()),
                     ctx);
}

BoundReport fif_vs_classical_bound(const LidstoneFif& fif, int k,
                                   std::optional<double> classical_sup, int grid_size) {
  if (k < 0 || k > fif.p()) throw ValidationError("fif_vs_classical_bound: k out of range");
  const Partition& part = fif.partition();
  const BoundContext ctx = context_for(fif, k);
  const Evaluable phi = classical_derivative(fif.classical(), 2 * k);
  const double phi_sup = classical_sup ? *classical_sup : sup_norm(phi, grid_size, part.nodes());
  const double m = m_constant(k, fif.p(), ctx.rho, part.span());
  const double rhs = ctx.alpha_inf / gap(part, k, ctx.alpha_inf, "fif_vs_classical_bound") *
                     (phi_sup + m);
  const double lhs = sup_norm_diff(fif_derivative(fif, k), phi, grid_size, part.nodes());
  return make_report("fif_vs_classical", lhs, rhs, ctx);
}

BoundReport continuous_dependence_check(const LidstoneData& data, const ScalingVector& alpha1,
                                        const ScalingVector& alpha2, int k, int grid_size) {
  if (k < 0 || k > data.p()) throw ValidationError("continuous_dependence_check: k out of range");
  const LidstoneFif f1 = build_fif(data, alpha1);
  const LidstoneFif f2 = build_fif(data, alpha2);
  const Partition& part = data.partition();
  double delta = 0.0;
  for (std::size_t i = 0; i < alpha1.size(); ++i) {
    delta = std::max(delta, std::abs(alpha1.alpha[i] - alpha2.alpha[i]));
  }
  const BoundContext ctx = context_for(f1, k);
  const Evaluable second = fif_derivative(f2, k);
  const double second_sup = sup_norm(second, grid_size, part.nodes());
  const double m = m_constant(k, data.p(), data.rho(), part.span());
  const double rhs =
      delta / gap(part, k, ctx.alpha_inf, "continuous_dependence_check") * (second_sup + m);
  const double lhs = sup_norm_diff(fif_derivative(f1, k), second, grid_size, part.nodes());
  return make_report("continuous_dependence", lhs, rhs, ctx);
}

BoundReport qn_sensitivity_bound_check(const LidstoneFif& fif, int k, int grid_size) {
  const int p = fif.p();
  if (k < 0 || k > p) throw ValidationError("qn_sensitivity_bound_check: k out of range");
  const Partition& part = fif.partition();
  const LidstoneData& data = fif.data();
  const int N = part.intervals();
  const double span = part.span();
  // -sum_{l=0}^{p-k} [y_{0,2l+2k} Lambda_l((xN-x)/span) + y_{N,2l+2k} Lambda_l((x-x0)/span)] span^{2l}
  auto sensitivity = [&](double x) {
    const double t = (x - part.front()) / span;
    double s = 0.0;
    double scale = 1.0;
    for (int l = 0; l <= p - k; ++l) {
      const RationalPoly& lambda = lidstone_poly(l);
      s += (data.value(0, l + k) * lambda.evaluate(1.0 - t) + data.value(N, l + k) * lambda.evaluate(t)) *
           scale;
      scale *= span * span;
    }
    return -s;
  };
  const double lhs = sup_norm({sensitivity, domain_of(part)}, grid_size, part.nodes());
  const double rhs = m_constant(k, p, data.rho(), span);
  return make_report("qn_alpha_sensitivity", lhs, rhs, context_for(fif, k));
}

std::vector<BoundReport> all_bound_reports(const LidstoneFif& fif, int grid_size) {
  std::vector<BoundReport> out;
  ScalingVector half = fif.scaling();
  for (double& a : half.alpha) a *= 0.5;
  for (int k = 0; k <= fif.p(); ++k) {
    out.push_back(qn_sensitivity_bound_check(fif, k, grid_size));
    out.push_back(fif_vs_classical_bound(fif, k, std::nullopt, grid_size));
    out.push_back(continuous_dependence_check(fif.data(), fif.scaling(), half, k, grid_size));
  }
  return out;
}

ScalingVector AlphaRule::apply(const Partition& partition, int p) const {
  ScalingVector s;
  for (int n = 1; n <= partition.intervals(); ++n) {
    s.alpha.push_back(factor * std::pow(partition.ratio(n), 2 * p + exponent_offset));
  }
  return s;
}

std::string AlphaRule::describe() const {
  // Shortest representation that parses back to the same factor.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, factor);
  return "power:" + std::string(buf, res.ptr) + "," + std::to_string(exponent_offset);
}

AlphaRule AlphaRule::parse(const std::string& text) {
  if (text == "zero") return {0.0, 0};
  if (text.rfind("power:", 0) == 0) {
    const std::string rest = text.substr(6);
    const auto comma = rest.find(',');
    AlphaRule r;
    try {
      std::size_t used = 0;
      const std::string f = rest.substr(0, comma);
      r.factor = std::stod(f, &used);
      if (used != f.size()) throw ValidationError("");
      if (comma != std::string::npos) {
        const std::string e = rest.substr(comma + 1);
        r.exponent_offset = std::stoi(e, &used);
        if (used != e.size()) throw ValidationError("");
      }
    } catch (const std::exception&) {
      throw ValidationError("bad alpha rule '" + text + "'; expected power:<factor>[,<offset>]");
    }
    if (!(std::abs(r.factor) < 1.0) || r.exponent_offset < 0) {
      throw ValidationError("alpha rule '" + text +
                            "' leaves the admissible region; need |factor| < 1, offset >= 0");
    }
    return r;
  }
  throw ValidationError("unknown alpha rule '" + text + "'");
}

LineFit fit_log_log(std::span<const int> N_values, std::span<const double> errors) {
  if (N_values.size() != errors.size() || N_values.size() < 2) {
    throw ValidationError("fit_log_log needs at least two matching samples");
  }
  const double n = static_cast<double>(N_values.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) throw ValidationError("fit_log_log: errors must be positive");
    const double lx = std::log(static_cast<double>(N_values[i]));
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

namespace {

struct StudyPoint {
  std::vector<double> errors;
  std::vector<double> scales;
  std::vector<BoundReport> bounds;
};

StudyPoint study_point(const Generator& g, const Domain& domain, int p, int N,
                       const AlphaRule& rule, int grid_size) {
  const Partition part = Partition::uniform(domain.lo, domain.hi, N);
  const GeneratedData gen = generate_data(g, part, p);
  const LidstoneFif fif = build_fif(gen.data, rule.apply(part, p));
  const double sup_g2p =
      sup_norm({[&g, p](double x) { return g.eval(x, 2 * p); }, domain}, grid_size, part.nodes());
  StudyPoint pt;
  for (int k = 0; k <= p; ++k) {
    const Evaluable target{[&g, k](double x) { return g.eval(x, 2 * k); }, domain};
    const double err = sup_norm_diff(target, fif_derivative(fif, k), grid_size, part.nodes());
    const double g_sup = sup_norm(target, grid_size, part.nodes());
    pt.errors.push_back(err);
    pt.scales.push_back(g_sup);
    // Triangle inequality through the classical interpolant.
    const BoundContext ctx = context_for(fif, k);
    const double classical = classical_error_bound(p, 2 * k, sup_g2p, part.mesh());
    const double m = m_constant(k, p, ctx.rho, part.span());
    const double ratio = ctx.alpha_inf / gap(part, k, ctx.alpha_inf, "convergence_study");
    pt.bounds.push_back(
        make_report("generator_error", err, classical + ratio * (classical + g_sup + m), ctx));
  }
  return pt;
}

}  // namespace

ConvergenceStudy convergence_study(const Generator& g, const Domain& domain, int p,
                                   std::vector<int> N_values, const AlphaRule& rule,
                                   int grid_size) {
  if (N_values.size() < 3) throw ValidationError("convergence_study needs at least three N values");
  for (std::size_t i = 0; i < N_values.size(); ++i) {
    if (N_values[i] < 2) throw ValidationError("convergence_study: every N must be at least 2");
    if (i > 0 && N_values[i] <= N_values[i - 1]) {
      throw ValidationError("convergence_study: N values must be increasing");
    }
  }
  std::vector<std::future<StudyPoint>> futures;
  for (int N : N_values) {
    futures.push_back(std::async(std::launch::async, study_point, std::cref(g), std::cref(domain),
                                 p, N, std::cref(rule), grid_size));
  }
  ConvergenceStudy study;
  study.generator = g.name;
  study.domain = domain;
  study.p = p;
  study.alpha_rule = rule.describe();
  study.N_values = N_values;
  study.errors.assign(static_cast<std::size_t>(p + 1), {});
  std::vector<double> scale(static_cast<std::size_t>(p + 1), 0.0);
  for (auto& f : futures) {
    StudyPoint pt = f.get();
    for (int k = 0; k <= p; ++k) {
      study.errors[k].push_back(pt.errors[k]);
      scale[k] = std::max(scale[k], pt.scales[k]);
    }
    for (auto& b : pt.bounds) study.bounds.push_back(std::move(b));
  }
  for (int k = 0; k <= p; ++k) {
    const auto& e = study.errors[k];
    const bool degenerate = std::any_of(e.begin(), e.end(), [&](double v) {
      return !(v > kDegenerateRelative * (1.0 + scale[k]));
    });
    study.degenerate.push_back(degenerate);
    if (degenerate) {
      study.fitted_slope.push_back(std::nan(""));
      study.intercept.push_back(std::nan(""));
    } else {
      const LineFit fit = fit_log_log(study.N_values, e);
      study.fitted_slope.push_back(fit.slope);
      study.intercept.push_back(fit.intercept);
    }
  }
  return study;
}

}  // namespace lfif
