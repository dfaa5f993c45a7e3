#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "doctest.h"
#include "lfif/cli.hpp"
#include "lfif/demo.hpp"
#include "lfif/errors.hpp"
#include "lfif/generators.hpp"
#include "lfif/io.hpp"
#include "lfif/svg.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lfif");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = lfif::cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lfif_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generators") {
  const auto g = lfif::sinc_generator();
  CHECK(g.analytic());
  CHECK(g.eval(5.0, 0) == doctest::Approx(-0.1918).epsilon(2.6e-4));
  CHECK(std::round(g.eval(5.0, 0) * 1e4) == -1918);
  CHECK(std::round(g.eval(7.0, 0) * 1e4) == 939);
  SUBCASE("closed-form derivatives against finite differences") {
    for (double x : {0.0, 0.3, 0.6, 2.0, 7.5, 19.0}) {
      for (int m = 1; m <= 4; ++m) {
        const double fd = lfif::central_difference(g.value, x, m, 1e-2);
        CHECK(g.eval(x, m) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }
  SUBCASE("series and closed form meet smoothly") {
    for (int m = 0; m <= 4; ++m) {
      CHECK(g.eval(0.4999999, m) == doctest::Approx(g.eval(0.5000001, m)).epsilon(1e-6));
    }
  }
  SUBCASE("cubic") {
    const auto cube = lfif::generator_from_name("poly:0,0,0,1");
    const auto d = lfif::generate_data(cube, lfif::Partition::uniform(0.0, 2.0, 4), 1).data;
    for (int n = 0; n <= 4; ++n) CHECK(d.value(n, 1) == doctest::Approx(6.0 * d.partition().node(n)));
  }
  SUBCASE("finite-difference fallback is flagged") {
    lfif::Generator plain{"exp", [](double x) { return std::exp(x); }, {}, 8};
    const auto d = lfif::generate_data(plain, lfif::Partition::uniform(0.0, 1.0, 3), 2);
    CHECK(d.finite_difference_fallback);
    for (int n = 0; n <= 3; ++n) {
      const double x = d.data.partition().node(n);
      CHECK(d.data.value(n, 1) == doctest::Approx(std::exp(x)).epsilon(1e-6));
    }
    CHECK_FALSE(lfif::generate_data(lfif::GeneratorSpec{}).finite_difference_fallback);
  }
  CHECK_THROWS_AS(lfif::generator_from_name("cosine"), lfif::ValidationError);
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double v = u(rng) * std::pow(10.0, i % 40 - 20);
    CHECK(lfif::parse_double(lfif::format_double(v)) == v);
  }
  CHECK(lfif::parse_double("0.3162e-4") == 0.3162e-4);
  CHECK_THROWS_AS(lfif::parse_double("1.5x"), lfif::ValidationError);
  CHECK_THROWS_AS(lfif::parse_double(""), lfif::ValidationError);
}

TEST_CASE("dataset CSV") {
  const auto data = lfif::table1_data();
  const auto alpha = lfif::table1_scaling();
  std::stringstream ss;
  lfif::write_dataset_csv(ss, data, alpha);
  CHECK(ss.str().rfind("n,x,y0,y2,y4,alpha\n", 0) == 0);
  const auto back = lfif::read_dataset_csv(ss);
  CHECK(back.data.values() == data.values());
  CHECK(back.data.partition().nodes() == data.partition().nodes());
  REQUIRE(back.scaling.has_value());
  CHECK(back.scaling->alpha == alpha.alpha);

  std::stringstream plain;
  lfif::write_dataset_csv(plain, data);
  CHECK_FALSE(lfif::read_dataset_csv(plain).scaling.has_value());

  std::istringstream bad_rows("n,x,y0,y2\n0,0,1,0\n2,1,0,0\n");
  CHECK_THROWS_AS(lfif::read_dataset_csv(bad_rows), lfif::ValidationError);
  std::istringstream bad_header("x,y\n0,1\n");
  CHECK_THROWS_AS(lfif::read_dataset_csv(bad_header), lfif::ValidationError);
}

TEST_CASE("model JSON round trip") {
  const auto fif = lfif::build_fif(lfif::table1_data(), lfif::table1_scaling());
  const auto j = lfif::model_to_json(fif);
  CHECK(j.at("format") == "lidstone-fif-model");
  CHECK(j.at("version") == lfif::kModelFormatVersion);
  const auto copy = lfif::model_from_json(nlohmann::json::parse(j.dump()));
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(5.0, 25.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    for (int k = 0; k <= 2; ++k) {
      const double a = fif.evaluate(x, 2 * k);
      CHECK(std::abs(copy.evaluate(x, 2 * k) - a) <= 1e-15 * std::max(1.0, std::abs(a)));
    }
  }
  auto broken = j;
  broken["version"] = 99;
  CHECK_THROWS_AS(lfif::model_from_json(broken), lfif::ValidationError);
}

TEST_CASE("embedded table matches the published digits") {
  // Independent transcription: x, y0, y2, y4, alpha (scaled by 1e4).
  const double expected[11][5] = {
      {5, -0.1918, 0.1991, -0.0508, 0},          {7, 0.0939, -0.0593, 0.1409, 0.3162},
      {9, 0.0458, -0.0672, -0.0092, 0.3981},     {11, -0.0909, 0.0895, -0.0819, 0.1585},
      {13, 0.0323, -0.0212, 0.0523, 0.1995},     {15, 0.0434, -0.0497, 0.0272, 0.2512},
      {17, -0.0566, 0.0543, -0.0581, 0.3981},    {19, 0.0079, -0.0024, 0.0188, 0.3802},
      {21, 0.0398, -0.0421, 0.0337, 0.2512},     {23, -0.0368, 0.0346, -0.0400, 0.3090},
      {25, -0.0053, 0.0084, 0.0012, 0.3162}};
  const auto data = lfif::table1_data();
  const auto alpha = lfif::table1_scaling();
  for (int n = 0; n <= 10; ++n) {
    const auto& e = expected[n];
    CHECK(data.partition().node(n) == e[0]);
    for (int k = 0; k <= 2; ++k) CHECK(data.value(n, k) == doctest::Approx(e[k + 1]).epsilon(1e-14));
    if (n > 0) CHECK(alpha[n] == doctest::Approx(e[4] * 1e-4).epsilon(1e-14));
  }
}

TEST_CASE("SVG output") {
  lfif::SvgPlot plot("a & b <c>", 400, 300);
  plot.add_polyline({{0, 0}, {1, 1}}, "red");
  plot.add_scatter({{0.5, 0.2}}, "blue");
  const std::string s = plot.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("a &amp; b &lt;c&gt;") != std::string::npos);
  CHECK(s.find("<polyline") != std::string::npos);
  CHECK(s.find("<circle") != std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);
}

TEST_CASE("CLI exit codes and usage") {
  CHECK(run({}).code == lfif::kExitValidation);
  CHECK(run({"frobnicate"}).code == lfif::kExitValidation);
  CHECK(run({"polys", "--nope"}).code == lfif::kExitValidation);
  CHECK(run({"--help"}).code == lfif::kExitOk);
  const Run missing = run({"fif", "eval", "--model", "/nonexistent/model.json", "--x", "1"});
  CHECK(missing.code == lfif::kExitIo);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("CLI pipeline") {
  const fs::path dir = scratch("pipeline");
  const std::string csv = (dir / "data.csv").string();
  const std::string model = (dir / "model.json").string();
  REQUIRE(run({"generate", "--p", "2", "--N", "10", "--alpha-rule", "power:0.5", "--out", csv}).code ==
          0);
  REQUIRE(run({"fif", "build", "--data", csv, "--out", model}).code == 0);
  const Run ev = run({"fif", "eval", "--model", model, "--x", "5,15,25", "--orders", "0,2"});
  CHECK(ev.code == 0);
  CHECK(ev.out.find("x,") == 0);
  const Run grid = run({"fif", "eval", "--model", model, "--x", "9.5", "--method", "grid"});
  CHECK(grid.code == 0);
  CHECK(run({"bounds", "--model", model, "--grid", "801"}).code == 0);
  CHECK(run({"interp", "--data", csv, "--x", "6.5"}).code == 0);
  const std::string prefix = (dir / "render").string();
  CHECK(run({"fif", "render", "--model", model, "--iterations", "500", "--out", prefix}).code == 0);
  CHECK(fs::exists(prefix + ".csv"));
  CHECK(fs::exists(prefix + ".svg"));
  const std::string head = lfif::read_text_file(prefix + ".csv").substr(0, 40);
  CHECK(head.find("# rng=mt19937_64 seed=") == 0);
  const Run polys = run({"polys", "--max-l", "2"});
  CHECK(polys.code == 0);
  CHECK(polys.out.find("7/360") != std::string::npos);
}

TEST_CASE("CLI rejects scaling outside the admissible region") {
  const fs::path dir = scratch("theta");
  const std::string csv = (dir / "bad.csv").string();
  std::ostringstream os;
  auto alpha = lfif::table1_scaling();
  alpha.alpha[2] = 1.1e-4;
  lfif::write_dataset_csv(os, lfif::table1_data(), alpha);
  lfif::write_text_file(csv, os.str());
  const Run r = run({"fif", "build", "--data", csv});
  CHECK(r.code == lfif::kExitValidation);
  CHECK(r.err.find("interval 3") != std::string::npos);
}

TEST_CASE("converge subcommand") {
  const Run r = run({"converge", "--generator", "sinc-shifted", "--p", "2", "--N", "5,10,20,40,80"});
  CHECK(r.code == 0);
  CHECK(r.out.find("N,e0,e2,e4") == 0);
  CHECK(r.out.find("# fitted slopes: e0=-4.") != std::string::npos);
  CHECK(run({"converge", "--N", "5,10"}).code == lfif::kExitValidation);
  CHECK(run({"converge", "--interval", "5"}).code == lfif::kExitValidation);
}

TEST_CASE("Table 1 demo") {
  const fs::path a = scratch("demo_a");
  const fs::path b = scratch("demo_b");
  lfif::DemoOptions opts;
  opts.output_dir = a;
  const auto ra = lfif::run_table1_demo(opts);
  opts.output_dir = b;
  const auto rb = lfif::run_table1_demo(opts);
  CHECK(ra.theta_ok);
  CHECK(ra.max_node_error <= 1e-8);
  for (int k = 0; k < 3; ++k) CHECK(ra.chaos_deviation[static_cast<std::size_t>(k)] <= 1e-6);
  for (const char* f : {"lfif_order0.svg", "lfif_order2.svg", "lfif_order4.svg"}) {
    CHECK(fs::exists(a / f));
  }
  for (const char* f : {"table1.csv", "node_report.csv", "fif_grid.csv", "chaos_order0.csv",
                        "chaos_order2.csv", "chaos_order4.csv"}) {
    CHECK(lfif::read_text_file(a / f) == lfif::read_text_file(b / f));
  }
  CHECK(ra.files.size() == rb.files.size());
}

#ifdef LFIF_CLI_PATH
TEST_CASE("installed binary reports exit codes") {
  const std::string bin = LFIF_CLI_PATH;
  CHECK(std::system((bin + " polys --max-l 1 > /dev/null").c_str()) == 0);
  const int bad = std::system((bin + " nosuchcommand > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == lfif::kExitValidation);
  const int io = std::system((bin + " interp --data /nonexistent.csv > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(io) == lfif::kExitIo);
}
#endif
