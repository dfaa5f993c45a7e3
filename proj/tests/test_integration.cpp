#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lfif/analysis.hpp"
#include "lfif/generators.hpp"
#include "lfif/io.hpp"
#include "suite.hpp"

TEST_CASE("generator to CSV to model JSON to evaluation") {
  const auto gen = lfif::generate_data(lfif::GeneratorSpec{"sinc-shifted", 5.0, 25.0, 2, 20});
  const auto alpha = lfif::AlphaRule{}.apply(gen.data.partition(), 2);
  std::stringstream csv;
  lfif::write_dataset_csv(csv, gen.data, alpha);
  const auto ds = lfif::read_dataset_csv(csv);
  const auto fif = lfif::build_fif(ds.data, *ds.scaling);
  const auto model = lfif::model_from_json(nlohmann::json::parse(lfif::model_to_json(fif).dump()));
  const auto g = lfif::sinc_generator();
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 + 20.0 * i / 200.0;
    CHECK(model.evaluate(x) == fif.evaluate(x));
    // The alpha-driven deviation at N = 20 stays well below the data scale.
    CHECK(std::abs(model.evaluate(x) - g.eval(x, 0)) < 1e-3);
  }
}

TEST_CASE("randomized models: conditions, self-reference, method agreement") {
  std::mt19937_64 rng(2718);
  for (const auto& c : lfif::test::random_suite(5, 31)) {
    const auto fif = lfif::build_fif(c.data, c.alpha);
    const auto& part = fif.partition();
    for (int n = 0; n <= part.intervals(); ++n) {
      for (int k = 0; k <= c.p; ++k) {
        CHECK(std::abs(fif.evaluate(part.node(n), 2 * k) - c.data.value(n, k)) <= 1e-8);
      }
    }
    for (int n = 1; n <= part.intervals(); ++n) {
      std::uniform_real_distribution<double> u(part.node(n - 1), part.node(n));
      for (int i = 0; i < 32; ++i) {
        const double x = u(rng);
        const double s = (x - part.offset(n)) / part.ratio(n);
        const double t = (s - part.front()) / part.span();
        for (int k = 0; k <= c.p; ++k) {
          const double rhs = fif.apply_branch(n, k, t, fif.evaluate(s, 2 * k));
          CHECK(std::abs(fif.evaluate(x, 2 * k) - rhs) <= 1e-9);
        }
      }
    }
    const auto grid = lfif::eval_grid_fixed_point(fif, 2001, 0, 64);
    std::uniform_real_distribution<double> u(part.front(), part.back());
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      CHECK(std::abs(grid.interpolate(x) - fif.evaluate(x)) <= 1e-11 + grid.interpolation_error());
    }
  }
}
