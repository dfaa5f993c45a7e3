#include "lfif/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lfif/errors.hpp"

namespace lfif {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

nlohmann::json to_strings(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(format_double(x));
  return a;
}

std::vector<double> from_strings(const nlohmann::json& a, const char* field) {
  if (!a.is_array()) throw ValidationError(std::string("model field '") + field + "' must be an array");
  std::vector<double> out;
  for (const auto& e : a) {
    if (!e.is_string()) {
      throw ValidationError(std::string("model field '") + field + "' must hold decimal strings");
    }
    out.push_back(parse_double(e.get<std::string>()));
  }
  return out;
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string("model is missing field '") + name + "'");
  }
  return j.at(name);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  if (text.empty()) throw ValidationError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError("bad number '" + text + "'");
  }
  return v;
}

void write_dataset_csv(std::ostream& os, const LidstoneData& data,
                       const std::optional<ScalingVector>& scaling) {
  os << "n,x";
  for (int k = 0; k <= data.p(); ++k) os << ",y" << 2 * k;
  if (scaling) os << ",alpha";
  os << '\n';
  for (int n = 0; n <= data.intervals(); ++n) {
    os << n << ',' << format_double(data.partition().node(n));
    for (int k = 0; k <= data.p(); ++k) os << ',' << format_double(data.value(n, k));
    if (scaling) {
      os << ',';
      if (n > 0) os << format_double((*scaling)[n]);
    }
    os << '\n';
  }
}

Dataset read_dataset_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("dataset is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "n" || header[1] != "x") {
    throw ValidationError("dataset header must start with n,x,y0");
  }
  const bool has_alpha = header.back() == "alpha";
  const int ycols = static_cast<int>(header.size()) - 2 - (has_alpha ? 1 : 0);
  for (int k = 0; k < ycols; ++k) {
    if (header[static_cast<std::size_t>(2 + k)] != "y" + std::to_string(2 * k)) {
      throw ValidationError("dataset column " + std::to_string(2 + k) + " must be named y" +
                            std::to_string(2 * k));
    }
  }
  const int p = ycols - 1;
  std::vector<double> nodes;
  std::vector<std::vector<double>> values;
  ScalingVector scaling;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ValidationError("dataset row " + std::to_string(nodes.size()) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
    }
    const int n = static_cast<int>(nodes.size());
    if (cells[0] != std::to_string(n)) {
      throw ValidationError("dataset rows must be numbered 0, 1, ...; got '" + cells[0] + "'");
    }
    nodes.push_back(parse_double(cells[1]));
    std::vector<double> row;
    for (int k = 0; k <= p; ++k) row.push_back(parse_double(cells[static_cast<std::size_t>(2 + k)]));
    values.push_back(std::move(row));
    if (has_alpha) {
      const std::string& a = cells.back();
      if (n == 0) {
        if (!a.empty()) throw ValidationError("alpha must be blank on row 0");
      } else {
        scaling.alpha.push_back(parse_double(a));
      }
    }
  }
  Dataset ds{LidstoneData(Partition(std::move(nodes)), p, std::move(values)), std::nullopt};
  if (has_alpha) ds.scaling = std::move(scaling);
  return ds;
}

nlohmann::json model_to_json(const LidstoneFif& fif) {
  nlohmann::json j;
  j["format"] = "lidstone-fif-model";
  j["version"] = kModelFormatVersion;
  j["p"] = fif.p();
  j["nodes"] = to_strings(fif.partition().nodes());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : fif.data().values()) rows.push_back(to_strings(r));
  j["values"] = rows;
  j["alpha"] = to_strings(fif.scaling().alpha);
  j["q_variable"] = "t = (x - x0) / (xN - x0)";
  nlohmann::json q = nlohmann::json::array();
  for (const auto& br : fif.branches()) q.push_back(to_strings(br.q.in_t().coefficients()));
  j["q"] = q;
  return j;
}

LidstoneFif model_from_json(const nlohmann::json& j) {
  if (field(j, "format") != "lidstone-fif-model") throw ValidationError("not a Lidstone FIF model");
  if (field(j, "version") != kModelFormatVersion) {
    throw ValidationError("unsupported model version " + field(j, "version").dump());
  }
  const auto& pj = field(j, "p");
  if (!pj.is_number_integer()) throw ValidationError("model field 'p' must be an integer");
  const int p = pj.get<int>();
  std::vector<std::vector<double>> values;
  for (const auto& row : field(j, "values")) values.push_back(from_strings(row, "values"));
  LidstoneData data(Partition(from_strings(field(j, "nodes"), "nodes")), p, std::move(values));
  ScalingVector scaling{from_strings(field(j, "alpha"), "alpha")};
  std::vector<std::vector<double>> q;
  for (const auto& c : field(j, "q")) q.push_back(from_strings(c, "q"));
  return assemble_fif(data, scaling, std::move(q));
}

nlohmann::json report_to_json(const BoundReport& r) {
  return {{"name", r.name},
          {"lhs_measured", r.lhs_measured},
          {"rhs_bound", r.rhs_bound},
          {"satisfied", r.satisfied},
          {"context",
           {{"p", r.context.p},
            {"k", r.context.k},
            {"N", r.context.N},
            {"alpha_inf", r.context.alpha_inf},
            {"mu", r.context.mu},
            {"rho", r.context.rho},
            {"mesh", r.context.mesh}}}};
}

nlohmann::json reports_to_json(const std::vector<BoundReport>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) a.push_back(report_to_json(r));
  return a;
}

nlohmann::json study_to_json(const ConvergenceStudy& s) {
  nlohmann::json j;
  j["generator"] = s.generator;
  j["interval"] = {s.domain.lo, s.domain.hi};
  j["p"] = s.p;
  j["alpha_rule"] = s.alpha_rule;
  j["N"] = s.N_values;
  nlohmann::json orders = nlohmann::json::array();
  for (std::size_t k = 0; k < s.errors.size(); ++k) {
    nlohmann::json o;
    o["derivative_order"] = 2 * k;
    o["errors"] = s.errors[k];
    o["degenerate"] = static_cast<bool>(s.degenerate[k]);
    if (s.degenerate[k]) {
      o["fitted_slope"] = nullptr;
      o["intercept"] = nullptr;
    } else {
      o["fitted_slope"] = s.fitted_slope[k];
      o["intercept"] = s.intercept[k];
    }
    orders.push_back(o);
  }
  j["orders"] = orders;
  j["bounds"] = reports_to_json(s.bounds);
  return j;
}

void write_study_csv(std::ostream& os, const ConvergenceStudy& s) {
  os << "N";
  for (std::size_t k = 0; k < s.errors.size(); ++k) os << ",e" << 2 * k;
  os << '\n';
  for (std::size_t i = 0; i < s.N_values.size(); ++i) {
    os << s.N_values[i];
    for (const auto& e : s.errors) os << ',' << format_double(e[i]);
    os << '\n';
  }
}

void write_sample_csv(std::ostream& os, const AttractorSample& s) {
  os << "# rng=" << s.generator << " seed=" << s.seed << " iterations=" << s.iterations
     << " burn_in=" << s.burn_in << " derivative_order=" << s.derivative_order << '\n';
  os << "x,y\n";
  for (const auto& [x, y] : s.points) os << format_double(x) << ',' << format_double(y) << '\n';
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace lfif
