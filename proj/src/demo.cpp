#include "lfif/demo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lfif/generators.hpp"
#include "lfif/io.hpp"
#include "lfif/svg.hpp"

namespace lfif {

// n | x_n | y_{n,0} | y_{n,2} | y_{n,4} | alpha_n
const std::array<Table1Row, 11> kTable1 = {{
    {"0", "5", "-0.1918", "0.1991", "-0.0508", ""},
    {"1", "7", "0.0939", "-0.0593", "0.1409", "0.3162e-4"},
    {"2", "9", "0.0458", "-0.0672", "-0.0092", "0.3981e-4"},
    {"3", "11", "-0.0909", "0.0895", "-0.0819", "0.1585e-4"},
    {"4", "13", "0.0323", "-0.0212", "0.0523", "0.1995e-4"},
    {"5", "15", "0.0434", "-0.0497", "0.0272", "0.2512e-4"},
    {"6", "17", "-0.0566", "0.0543", "-0.0581", "0.3981e-4"},
    {"7", "19", "0.0079", "-0.0024", "0.0188", "0.3802e-4"},
    {"8", "21", "0.0398", "-0.0421", "0.0337", "0.2512e-4"},
    {"9", "23", "-0.0368", "0.0346", "-0.0400", "0.3090e-4"},
    {"10", "25", "-0.0053", "0.0084", "0.0012", "0.3162e-4"},
}};

LidstoneData table1_data() {
  std::vector<double> nodes;
  std::vector<std::vector<double>> values;
  for (const auto& row : kTable1) {
    nodes.push_back(parse_double(row.x));
    values.push_back({parse_double(row.y0), parse_double(row.y2), parse_double(row.y4)});
  }
  return LidstoneData(Partition(std::move(nodes)), 2, std::move(values));
}

ScalingVector table1_scaling() {
  ScalingVector s;
  for (std::size_t i = 1; i < kTable1.size(); ++i) s.alpha.push_back(parse_double(kTable1[i].alpha));
  return s;
}

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%8.4f", v);
  return buf;
}

std::string presentation(const LidstoneData& data, const ScalingVector& alpha) {
  const Generator g = sinc_generator();
  std::ostringstream os;
  os << "Replayed dataset (4 decimal places), with analytic derivatives of sin(x)/x for reference\n";
  os << "  n      x_n    y_n,0    y_n,2    y_n,4     alpha_n   | g(x_n)   g''(x_n)  g''''(x_n)\n";
  for (int n = 0; n <= data.intervals(); ++n) {
    const double x = data.partition().node(n);
    char head[64];
    std::snprintf(head, sizeof head, "%3d %8.0f", n, x);
    os << head << ' ' << fixed4(data.value(n, 0)) << ' ' << fixed4(data.value(n, 1)) << ' '
       << fixed4(data.value(n, 2)) << ' ';
    if (n == 0) {
      os << "         --";
    } else {
      char a[32];
      std::snprintf(a, sizeof a, "%11.4e", alpha[n]);
      os << a;
    }
    os << "   |" << fixed4(g.eval(x, 0)) << "  " << fixed4(g.eval(x, 2)) << "  "
       << fixed4(g.eval(x, 4)) << '\n';
  }
  return os.str();
}

}  // namespace

DemoResult run_table1_demo(const DemoOptions& opts) {
  std::error_code ec;
  std::filesystem::create_directories(opts.output_dir, ec);
  if (ec) throw IoError("cannot create '" + opts.output_dir.string() + "': " + ec.message());

  const LidstoneData data = table1_data();
  const ScalingVector alpha = table1_scaling();
  DemoResult result;
  validate_scaling(data.partition(), data.p(), alpha);
  result.theta_ok = true;
  const LidstoneFif fif = build_fif(data, alpha);
  EvalOptions eval_opts;
  eval_opts.tolerance = opts.tolerance;

  auto emit = [&](const std::string& name, const std::string& contents) {
    const auto path = opts.output_dir / name;
    write_text_file(path, contents);
    result.files.push_back(path);
  };

  {
    std::ostringstream os;
    write_dataset_csv(os, data, alpha);
    emit("table1.csv", os.str());
  }
  emit("table1_presentation.txt", presentation(data, alpha));
  emit("model.json", model_to_json(fif).dump(2) + "\n");

  std::ostringstream report;
  report << "n,x,derivative_order,expected,evaluated,abs_error\n";
  for (int n = 0; n <= data.intervals(); ++n) {
    for (int k = 0; k <= data.p(); ++k) {
      const double x = data.partition().node(n);
      const double v = fif.evaluate(x, 2 * k, eval_opts);
      NodeCheck c{n, 2 * k, data.value(n, k), v, std::abs(v - data.value(n, k))};
      result.max_node_error = std::max(result.max_node_error, c.error);
      report << n << ',' << format_double(x) << ',' << 2 * k << ',' << format_double(c.expected)
             << ',' << format_double(c.evaluated) << ',' << format_double(c.error) << '\n';
      result.node_checks.push_back(c);
    }
  }
  emit("node_report.csv", report.str());

  const Partition& part = data.partition();
  std::vector<double> xs;
  for (int i = 0; i < opts.grid; ++i) xs.push_back(part.front() + part.span() * i / (opts.grid - 1));
  xs.back() = part.back();
  std::array<std::vector<std::pair<double, double>>, 3> curves;
  std::ostringstream grid;
  grid << "x,l0,l2,l4\n";
  for (double x : xs) {
    grid << format_double(x);
    for (int k = 0; k <= 2; ++k) {
      const double v = fif.evaluate(x, 2 * k, eval_opts);
      curves[static_cast<std::size_t>(k)].emplace_back(x, v);
      grid << ',' << format_double(v);
    }
    grid << '\n';
  }
  emit("fif_grid.csv", grid.str());

  const char* titles[3] = {"C4 Lidstone FIF", "Second derivative of the C4 Lidstone FIF",
                           "Fourth derivative of the C4 Lidstone FIF"};
  for (int k = 0; k <= 2; ++k) {
    const AttractorSample sample = chaos_game(fif, opts.iterations, opts.seed, opts.burn_in, 2 * k);
    double dev = 0.0;
    for (const auto& [x, y] : sample.points) {
      dev = std::max(dev, std::abs(y - fif.evaluate(x, 2 * k, eval_opts)));
    }
    result.chaos_deviation[static_cast<std::size_t>(k)] = dev;
    std::ostringstream csv;
    write_sample_csv(csv, sample);
    emit("chaos_order" + std::to_string(2 * k) + ".csv", csv.str());

    SvgPlot plot(titles[k]);
    plot.set_labels("x", k == 0 ? "l(x)" : "d^" + std::to_string(2 * k) + " l / dx^" +
                                              std::to_string(2 * k));
    plot.add_scatter(sample.points, "#d62728", 0.8);
    plot.add_polyline(curves[static_cast<std::size_t>(k)], "#1f77b4", 1.0);
    std::vector<std::pair<double, double>> nodes;
    for (int n = 0; n <= data.intervals(); ++n) nodes.emplace_back(part.node(n), data.value(n, k));
    plot.add_scatter(nodes, "black", 3.0);
    emit("lfif_order" + std::to_string(2 * k) + ".svg", plot.str());
  }
  return result;
}

}  // namespace lfif
