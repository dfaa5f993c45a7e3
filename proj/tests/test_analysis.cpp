#include <cmath>
#include <random>

#include "doctest.h"
#include "lfif/analysis.hpp"
#include "lfif/demo.hpp"
#include "lfif/errors.hpp"
#include "lfif/generators.hpp"
#include "suite.hpp"

using lfif::BoundReport;
using lfif::Domain;
using lfif::Evaluable;

namespace {

lfif::LidstoneFif table1_model() { return lfif::build_fif(lfif::table1_data(), lfif::table1_scaling()); }

lfif::ScalingVector scaled(const lfif::ScalingVector& s, double f) {
  lfif::ScalingVector out = s;
  for (double& a : out.alpha) a *= f;
  return out;
}

}  // namespace

TEST_CASE("grid sup norms") {
  const Evaluable f{[](double x) { return x; }, {0.0, 1.0}};
  const Evaluable z{[](double) { return 0.0; }, {0.0, 1.0}};
  CHECK(lfif::sup_norm_diff(f, f, 1001) == 0.0);
  CHECK(lfif::sup_norm_diff(f, z, 1001) == 1.0);
  CHECK(lfif::sup_norm(f, 11) == 1.0);
  const Evaluable shifted{[](double x) { return x; }, {0.0, 2.0}};
  CHECK_THROWS_AS(lfif::sup_norm_diff(f, shifted, 11), lfif::ValidationError);
  const std::vector<double> extra{0.123};
  const auto grid = lfif::dense_grid({0.0, 1.0}, 5, extra);
  CHECK(grid.size() == 6);
  CHECK(std::is_sorted(grid.begin(), grid.end()));

  const lfif::LidstoneFif flat = lfif::build_fif(lfif::table1_data(), {std::vector<double>(10, 0.0)});
  const Evaluable classical{[&](double x) { return flat.classical().evaluate(x); }, {5.0, 25.0}};
  const Evaluable fif{[&](double x) { return flat.evaluate(x); }, {5.0, 25.0}};
  CHECK(lfif::sup_norm_diff(classical, fif, 4001) <= 1e-10);
}

TEST_CASE("classical error bound formula") {
  CHECK(lfif::classical_error_bound(2, 0, 0.0, 0.3) == 0.0);
  CHECK(lfif::classical_error_bound(1, 0, 1.0, 1.0) == 0.25);
  // d_{2,3} = 2 and mesh^{2p-k} = 0.5^{-1}.
  CHECK(lfif::classical_error_bound(1, 3, 1.0, 0.5) == 8.0);
  CHECK_THROWS_AS(lfif::classical_error_bound(1, 4, 1.0, 0.5), lfif::ValidationError);
  for (int p = 1; p <= 3; ++p) {
    for (int k = 0; k <= 2 * p + 1; ++k) {
      const double b = lfif::classical_error_bound(p, k, 1.7, 0.4);
      CHECK(lfif::classical_error_bound(p, k, 3.4, 0.4) == doctest::Approx(2.0 * b));
      CHECK(lfif::classical_error_bound(p, k, 1.7, 0.8) ==
            doctest::Approx(b * std::pow(2.0, 2 * p - k)));
    }
  }
}

TEST_CASE("classical error report for sin(x)/x") {
  const auto g = lfif::sinc_generator();
  for (int N : {10, 20, 40}) {
    const auto data = lfif::generate_data(g, lfif::Partition::uniform(5.0, 25.0, N), 2).data;
    const auto interp = lfif::build_classical(data);
    for (int k : {0, 1, 2, 3, 4, 5}) {
      const BoundReport r = lfif::classical_error_report(g, interp, k);
      CHECK_MESSAGE(r.satisfied, "N=", N, " k=", k, " lhs=", r.lhs_measured, " rhs=", r.rhs_bound);
      CHECK(r.context.mesh == doctest::Approx(20.0 / N));
    }
  }
}

TEST_CASE("FIF against classical") {
  SUBCASE("alpha = 0") {
    const auto fif = lfif::build_fif(lfif::table1_data(), {std::vector<double>(10, 0.0)});
    for (int k = 0; k <= 2; ++k) {
      const BoundReport r = lfif::fif_vs_classical_bound(fif, k);
      CHECK(r.rhs_bound == 0.0);
      CHECK(r.lhs_measured <= 1e-10);
      CHECK(r.satisfied);
    }
  }
  SUBCASE("Table 1") {
    const auto fif = table1_model();
    for (int k = 0; k <= 2; ++k) {
      const BoundReport r = lfif::fif_vs_classical_bound(fif, k);
      CHECK(r.satisfied);
      CHECK(r.lhs_measured > 0.0);
      CHECK(r.context.alpha_inf == doctest::Approx(0.3981e-4));
    }
  }
  SUBCASE("a supplied classical sup norm is used as given") {
    const auto fif = table1_model();
    const BoundReport a = lfif::fif_vs_classical_bound(fif, 0, 1.0);
    const BoundReport b = lfif::fif_vs_classical_bound(fif, 0, 2.0);
    CHECK(b.rhs_bound > a.rhs_bound);
    CHECK(a.lhs_measured == b.lhs_measured);
  }
}

TEST_CASE("continuous dependence on alpha") {
  const auto data = lfif::table1_data();
  const auto alpha = lfif::table1_scaling();
  const lfif::ScalingVector zero{std::vector<double>(10, 0.0)};
  for (int k = 0; k <= 2; ++k) {
    const BoundReport same = lfif::continuous_dependence_check(data, alpha, alpha, k);
    CHECK(same.lhs_measured <= 2e-12);
    CHECK(same.rhs_bound == 0.0);
    CHECK(same.satisfied);

    const BoundReport vs0 = lfif::continuous_dependence_check(data, alpha, zero, k);
    const BoundReport direct = lfif::fif_vs_classical_bound(lfif::build_fif(data, alpha), k);
    CHECK(vs0.lhs_measured == doctest::Approx(direct.lhs_measured).epsilon(1e-12));
    CHECK(vs0.rhs_bound == doctest::Approx(direct.rhs_bound).epsilon(1e-12));

    CHECK(lfif::continuous_dependence_check(data, alpha, scaled(alpha, 0.5), k).satisfied);
  }
}

TEST_CASE("sensitivity of q_n to alpha_n") {
  const auto fif = table1_model();
  for (int k = 0; k <= 2; ++k) {
    const BoundReport r = lfif::qn_sensitivity_bound_check(fif, k);
    CHECK(r.satisfied);
    CHECK(r.lhs_measured > 0.0);
  }
  // rho = 0: every endpoint value vanishes.
  const lfif::Partition part = lfif::Partition::uniform(0.0, 1.0, 4);
  std::vector<std::vector<double>> v(5, std::vector<double>{0.0, 0.0});
  v[2] = {1.0, -1.0};
  const auto zero_ends =
      lfif::build_fif(lfif::LidstoneData(part, 1, v), {std::vector<double>(4, 0.001)});
  const BoundReport r = lfif::qn_sensitivity_bound_check(zero_ends, 0);
  CHECK(r.lhs_measured == 0.0);
  CHECK(r.rhs_bound == 0.0);
  CHECK(r.satisfied);
}

TEST_CASE("estimates need |alpha|_inf < mu^{2k}") {
  // a = (0.1, 0.9): alpha_2 = 0.5 a_2^2 is admissible but exceeds mu^2 = 0.01.
  const lfif::Partition part({0.0, 0.1, 1.0});
  const lfif::LidstoneData data(part, 1, {{0, 0}, {1, 0}, {0, 1}});
  const auto fif = lfif::build_fif(data, {{0.0, 0.405}});
  CHECK_NOTHROW(lfif::fif_vs_classical_bound(fif, 0));
  CHECK_THROWS_AS(lfif::fif_vs_classical_bound(fif, 1), lfif::ValidationError);
}

TEST_CASE("every report holds over the randomized suite") {
  for (const auto& c : lfif::test::random_suite(6, 99)) {
    const auto fif = lfif::build_fif(c.data, c.alpha);
    for (const BoundReport& r : lfif::all_bound_reports(fif, 1001)) {
      CHECK_MESSAGE(r.satisfied, r.name, " k=", r.context.k, " lhs=", r.lhs_measured,
                    " rhs=", r.rhs_bound);
    }
  }
}

TEST_CASE("alpha rules") {
  const lfif::AlphaRule def;
  CHECK(def.describe() == "power:0.9,0");
  const auto part = lfif::Partition::uniform(0.0, 1.0, 10);
  const auto a = def.apply(part, 2);
  CHECK(a.size() == 10);
  CHECK(a[3] == doctest::Approx(0.9e-4));
  CHECK_NOTHROW(lfif::validate_scaling(part, 2, a));
  CHECK(lfif::AlphaRule::parse("zero").apply(part, 2).max_abs() == 0.0);
  const auto r = lfif::AlphaRule::parse("power:-0.5,1");
  CHECK(r.factor == -0.5);
  CHECK(r.exponent_offset == 1);
  CHECK(lfif::AlphaRule::parse(r.describe()).describe() == r.describe());
  CHECK_THROWS_AS(lfif::AlphaRule::parse("power:1.0"), lfif::ValidationError);
  CHECK_THROWS_AS(lfif::AlphaRule::parse("power:0.5,-1"), lfif::ValidationError);
  CHECK_THROWS_AS(lfif::AlphaRule::parse("linear:0.5"), lfif::ValidationError);
}

TEST_CASE("log-log fit") {
  const std::vector<int> N{4, 8, 16, 32};
  std::vector<double> e;
  for (int n : N) e.push_back(7.0 * std::pow(n, -3.0));
  const auto fit = lfif::fit_log_log(N, e);
  CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("convergence studies") {
  SUBCASE("a quintic with alpha = 0 is reproduced to rounding") {
    const auto g = lfif::polynomial_generator({1.0, -0.5, 0.25, 0.1, -0.02, 0.003});
    const auto s = lfif::convergence_study(g, {0.0, 2.0}, 2, {4, 8, 16}, lfif::AlphaRule::parse("zero"),
                                           1001);
    for (bool d : s.degenerate) CHECK(d);
  }
  SUBCASE("sin(x)/x, default rule") {
    const auto s = lfif::convergence_study(lfif::sinc_generator(), {5.0, 25.0}, 2, {5, 10, 20, 40, 80});
    REQUIRE(s.errors.size() == 3);
    for (std::size_t i = 2; i < s.N_values.size(); ++i) CHECK(s.errors[0][i] < s.errors[0][i - 1]);
    CHECK(s.fitted_slope[0] == doctest::Approx(-4.0).epsilon(0.125));
    CHECK(s.fitted_slope[1] == doctest::Approx(-2.0).epsilon(0.25));
    CHECK(std::abs(s.fitted_slope[2]) < 0.5);
    for (const BoundReport& r : s.bounds) CHECK(r.satisfied);
  }
  SUBCASE("bad inputs") {
    const auto g = lfif::sinc_generator();
    CHECK_THROWS_AS(lfif::convergence_study(g, {5.0, 25.0}, 2, {5, 10}), lfif::ValidationError);
    CHECK_THROWS_AS(lfif::convergence_study(g, {5.0, 25.0}, 2, {5, 1, 10}), lfif::ValidationError);
  }
}
