#include "lfif/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lfif/analysis.hpp"
#include "lfif/demo.hpp"
#include "lfif/io.hpp"
#include "lfif/lidstone.hpp"
#include "lfif/svg.hpp"

namespace lfif {
namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_list(text)) {
    if (v != static_cast<int>(v)) throw ValidationError("expected integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Dataset load_dataset(const std::string& path) {
  std::istringstream in(read_text_file(path));
  return read_dataset_csv(in);
}

LidstoneFif load_model(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model '" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_text_file(path, contents);
  }
}

std::vector<double> grid_points(double lo, double hi, int size) {
  if (size < 2) throw ValidationError("--grid needs at least 2 points");
  std::vector<double> xs;
  for (int i = 0; i < size; ++i) xs.push_back(lo + (hi - lo) * i / (size - 1));
  xs.back() = hi;
  return xs;
}

std::vector<int> parse_orders(const std::string& text, int p) {
  std::vector<int> orders;
  if (text.empty()) {
    for (int k = 0; k <= p; ++k) orders.push_back(2 * k);
  } else {
    orders = parse_int_list(text);
  }
  return orders;
}

struct Options {
  std::string data, model, out, x_list, orders, method = "recursive", generator = "sinc-shifted";
  std::string N_list = "5,10,20,40,80", interval, alpha_rule;
  int p = 2, grid = 0, max_l = 4, iterations = 20000, burn_in = 100, order = 0, sweeps = 64;
  int N = 10;
  std::uint64_t seed = 20000;
  double tolerance = 1e-12;
};

int run(CLI::App& app, const Options& o, std::ostream& out) {
  auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  if (name == "polys") {
    std::ostringstream os;
    for (int l = 0; l <= o.max_l; ++l) {
      os << "Lambda_" << l << ":";
      for (const auto& c : lidstone_poly(l).coefficients()) os << ' ' << c;
      os << '\n';
    }
    if (o.grid > 0) {
      os << "x";
      for (int l = 0; l <= o.max_l; ++l) os << ",Lambda_" << l;
      os << '\n';
      for (double x : grid_points(0.0, 1.0, o.grid)) {
        os << format_double(x);
        for (int l = 0; l <= o.max_l; ++l) os << ',' << format_double(lidstone_poly(l).evaluate(x));
        os << '\n';
      }
    }
    emit(o.out, os.str(), out);
    return kExitOk;
  }

  if (name == "generate") {
    GeneratorSpec spec;
    spec.name = o.generator;
    spec.p = o.p;
    spec.N = o.N;
    if (!o.interval.empty()) {
      const auto iv = parse_list(o.interval);
      if (iv.size() != 2) throw ValidationError("--interval expects lo,hi");
      spec.x0 = iv[0];
      spec.xN = iv[1];
    }
    const Generator g = generator_from_name(spec.name);
    const Partition part = Partition::uniform(spec.x0, spec.xN, spec.N);
    const GeneratedData gen = generate_data(g, part, spec.p);
    std::optional<ScalingVector> alpha;
    if (!o.alpha_rule.empty()) alpha = AlphaRule::parse(o.alpha_rule).apply(part, spec.p);
    std::ostringstream os;
    write_dataset_csv(os, gen.data, alpha);
    emit(o.out, os.str(), out);
    return kExitOk;
  }

  if (name == "interp") {
    const Dataset ds = load_dataset(o.data);
    const PiecewiseInterpolant f = build_classical(ds.data);
    const Partition& part = ds.data.partition();
    std::vector<double> xs = o.x_list.empty() ? grid_points(part.front(), part.back(),
                                                            o.grid > 0 ? o.grid : 2001)
                                              : parse_list(o.x_list);
    const auto orders = parse_orders(o.orders, ds.data.p());
    std::ostringstream os;
    os << "x";
    for (int r : orders) os << ",d" << r;
    os << '\n';
    for (double x : xs) {
      os << format_double(x);
      for (int r : orders) os << ',' << format_double(f.evaluate(x, r));
      os << '\n';
    }
    emit(o.out, os.str(), out);
    return kExitOk;
  }

  if (name == "fif") {
    const std::string sub = cmd->get_subcommands().front()->get_name();
    if (sub == "build") {
      const Dataset ds = load_dataset(o.data);
      ScalingVector alpha;
      if (!o.alpha_rule.empty()) {
        alpha = AlphaRule::parse(o.alpha_rule).apply(ds.data.partition(), ds.data.p());
      } else if (ds.scaling) {
        alpha = *ds.scaling;
      } else {
        throw ValidationError("dataset has no alpha column; pass --alpha-rule");
      }
      const LidstoneFif fif = build_fif(ds.data, alpha);
      emit(o.out, model_to_json(fif).dump(2) + "\n", out);
      return kExitOk;
    }
    const LidstoneFif fif = load_model(o.model);
    const Partition& part = fif.partition();
    if (sub == "eval") {
      EvalOptions opts;
      opts.tolerance = o.tolerance;
      opts.sweeps = o.sweeps;
      if (o.grid > 0) opts.grid_size = o.grid;
      if (o.method == "grid") {
        opts.method = EvalOptions::Method::GridFixedPoint;
      } else if (o.method != "recursive") {
        throw ValidationError("--method must be 'recursive' or 'grid'");
      }
      std::vector<double> xs = o.x_list.empty() ? grid_points(part.front(), part.back(), 2001)
                                                : parse_list(o.x_list);
      const auto orders = parse_orders(o.orders, fif.p());
      std::vector<GridFunction> grids;
      if (opts.method == EvalOptions::Method::GridFixedPoint) {
        for (int r : orders) {
          grids.push_back(eval_grid_fixed_point(fif, opts.grid_size, r, opts.sweeps, opts.tolerance));
        }
      }
      std::ostringstream os;
      os << "x";
      for (int r : orders) os << ",d" << r;
      os << '\n';
      for (double x : xs) {
        os << format_double(x);
        for (std::size_t i = 0; i < orders.size(); ++i) {
          const double v = grids.empty() ? fif.evaluate(x, orders[i], opts) : grids[i].interpolate(x);
          os << ',' << format_double(v);
        }
        os << '\n';
      }
      emit(o.out, os.str(), out);
      return kExitOk;
    }
    // render
    const AttractorSample s = chaos_game(fif, o.iterations, o.seed, o.burn_in, o.order);
    std::ostringstream csv;
    write_sample_csv(csv, s);
    SvgPlot plot("Lidstone FIF, derivative order " + std::to_string(o.order));
    plot.add_scatter(s.points, "#d62728", 0.8);
    if (o.out.empty() || o.out == "-") {
      out << csv.str();
    } else {
      write_text_file(o.out + ".csv", csv.str());
      write_text_file(o.out + ".svg", plot.str());
    }
    return kExitOk;
  }

  if (name == "bounds") {
    const LidstoneFif fif = load_model(o.model);
    const auto reports = all_bound_reports(fif, o.grid > 0 ? o.grid : kDefaultSupGrid);
    emit(o.out, reports_to_json(reports).dump(2) + "\n", out);
    for (const auto& r : reports) {
      if (!r.satisfied) {
        throw ValidationError("bound '" + r.name + "' violated at k = " +
                              std::to_string(r.context.k));
      }
    }
    return kExitOk;
  }

  if (name == "converge") {
    const Generator g = generator_from_name(o.generator);
    Domain dom{5.0, 25.0};
    if (!o.interval.empty()) {
      const auto iv = parse_list(o.interval);
      if (iv.size() != 2) throw ValidationError("--interval expects lo,hi");
      dom = {iv[0], iv[1]};
    }
    const AlphaRule rule = o.alpha_rule.empty() ? AlphaRule{} : AlphaRule::parse(o.alpha_rule);
    const ConvergenceStudy s = convergence_study(g, dom, o.p, parse_int_list(o.N_list), rule,
                                                 o.grid > 0 ? o.grid : kDefaultSupGrid);
    std::ostringstream csv;
    write_study_csv(csv, s);
    std::ostringstream slopes;
    slopes << "# fitted slopes:";
    for (std::size_t k = 0; k < s.fitted_slope.size(); ++k) {
      slopes << " e" << 2 * k << '=';
      if (s.degenerate[k]) {
        slopes << "degenerate";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", s.fitted_slope[k]);
        slopes << buf;
      }
    }
    slopes << '\n';
    if (o.out.empty() || o.out == "-") {
      out << csv.str() << slopes.str();
    } else {
      write_text_file(o.out + ".csv", csv.str());
      write_text_file(o.out + ".json", study_to_json(s).dump(2) + "\n");
      out << slopes.str();
    }
    return kExitOk;
  }

  if (name == "demo-table1") {
    DemoOptions d;
    if (!o.out.empty()) d.output_dir = o.out;
    d.seed = o.seed;
    d.iterations = o.iterations;
    d.burn_in = o.burn_in;
    if (o.grid > 0) d.grid = o.grid;
    d.tolerance = o.tolerance;
    const DemoResult r = run_table1_demo(d);
    out << "scaling factors admissible: " << (r.theta_ok ? "yes" : "no") << '\n';
    out << "max node error over all orders: " << format_double(r.max_node_error) << '\n';
    for (int k = 0; k < 3; ++k) {
      out << "chaos game order " << 2 * k << " max deviation: "
          << format_double(r.chaos_deviation[static_cast<std::size_t>(k)]) << '\n';
    }
    for (const auto& f : r.files) out << "wrote " << f.string() << '\n';
    return kExitOk;
  }
  throw ValidationError("unknown command");
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lidstone fractal interpolation toolkit", "lfif"};
  app.require_subcommand(1);
  Options o;

  auto* polys = app.add_subcommand("polys", "Print Lidstone polynomial coefficients and values");
  polys->add_option("--max-l", o.max_l, "Highest order l")->check(CLI::Range(0, 16));
  polys->add_option("--grid", o.grid, "Also tabulate values on this many points of [0,1]");
  polys->add_option("--out", o.out, "Output file (default stdout)");

  auto* generate = app.add_subcommand("generate", "Sample a generator into a dataset CSV");
  generate->add_option("--generator", o.generator, "sinc-shifted or poly:c0,c1,...");
  generate->add_option("--p", o.p, "Half order p");
  generate->add_option("--N", o.N, "Number of intervals");
  generate->add_option("--interval", o.interval, "lo,hi (default 5,25)");
  generate->add_option("--alpha-rule", o.alpha_rule, "Add an alpha column: power:<f>[,<offset>]");
  generate->add_option("--out", o.out, "Output file (default stdout)");

  auto* interp = app.add_subcommand("interp", "Classical piecewise Lidstone interpolation");
  interp->add_option("--data", o.data, "Dataset CSV")->required();
  interp->add_option("--x", o.x_list, "Comma-separated evaluation points");
  interp->add_option("--grid", o.grid, "Uniform evaluation grid size (default 2001)");
  interp->add_option("--orders", o.orders, "Even derivative orders, e.g. 0,2");
  interp->add_option("--out", o.out, "Output CSV (default stdout)");

  auto* fif = app.add_subcommand("fif", "Build, evaluate and render Lidstone FIF models");
  fif->require_subcommand(1);
  auto* build = fif->add_subcommand("build", "Dataset CSV to model JSON");
  build->add_option("--data", o.data, "Dataset CSV")->required();
  build->add_option("--alpha-rule", o.alpha_rule, "Override the alpha column");
  build->add_option("--out", o.out, "Model JSON (default stdout)");
  auto* eval = fif->add_subcommand("eval", "Evaluate a model");
  eval->add_option("--model", o.model, "Model JSON")->required();
  eval->add_option("--x", o.x_list, "Comma-separated evaluation points");
  eval->add_option("--orders", o.orders, "Even derivative orders");
  eval->add_option("--method", o.method, "recursive or grid");
  eval->add_option("--grid", o.grid, "Grid size for --method grid");
  eval->add_option("--sweeps", o.sweeps, "Sweep cap for --method grid");
  eval->add_option("--tolerance", o.tolerance, "Absolute tolerance");
  eval->add_option("--out", o.out, "Output CSV (default stdout)");
  auto* render = fif->add_subcommand("render", "Chaos-game sample as CSV and SVG");
  render->add_option("--model", o.model, "Model JSON")->required();
  render->add_option("--iterations", o.iterations, "Iterations");
  render->add_option("--burn-in", o.burn_in, "Discarded leading points");
  render->add_option("--seed", o.seed, "PRNG seed (mt19937_64)");
  render->add_option("--order", o.order, "Even derivative order");
  render->add_option("--out", o.out, "Output prefix for .csv/.svg (default: CSV to stdout)");

  auto* bounds = app.add_subcommand("bounds", "Evaluate every error bound for a model (JSON)");
  bounds->add_option("--model", o.model, "Model JSON")->required();
  bounds->add_option("--grid", o.grid, "Sup-norm grid size (default 4001)");
  bounds->add_option("--out", o.out, "Output JSON (default stdout)");

  auto* converge = app.add_subcommand("converge", "Empirical convergence orders");
  converge->add_option("--generator", o.generator, "sinc-shifted or poly:c0,c1,...");
  converge->add_option("--p", o.p, "Half order p");
  converge->add_option("--N", o.N_list, "Comma-separated interval counts");
  converge->add_option("--interval", o.interval, "lo,hi (default 5,25)");
  converge->add_option("--alpha-rule", o.alpha_rule, "power:<factor>[,<offset>] or zero");
  converge->add_option("--grid", o.grid, "Sup-norm grid size (default 4001)");
  converge->add_option("--out", o.out, "Output prefix for .csv/.json (default: CSV to stdout)");

  auto* demo = app.add_subcommand("demo-table1", "Replay the sin(x)/x example on [5,25]");
  demo->add_option("--out", o.out, "Output directory (default table1_out)");
  demo->add_option("--seed", o.seed, "PRNG seed (mt19937_64)");
  demo->add_option("--iterations", o.iterations, "Chaos-game iterations");
  demo->add_option("--burn-in", o.burn_in, "Discarded leading points");
  demo->add_option("--grid", o.grid, "Dense grid size for plots (default 2001)");
  demo->add_option("--tolerance", o.tolerance, "Evaluation tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    return run(app, o, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ToleranceNotReached& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace lfif
