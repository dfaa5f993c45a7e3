#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lfif/fif.hpp"

namespace lfif {

// The sin(x)/x dataset on [5, 25] with ten scaling factors, exactly as printed.
struct Table1Row {
  const char* n;
  const char* x;
  const char* y0;
  const char* y2;
  const char* y4;
  const char* alpha;  // empty on row 0
};
extern const std::array<Table1Row, 11> kTable1;

LidstoneData table1_data();
ScalingVector table1_scaling();

struct NodeCheck {
  int n = 0;
  int derivative_order = 0;
  double expected = 0.0;
  double evaluated = 0.0;
  double error = 0.0;
};

struct DemoOptions {
  std::filesystem::path output_dir = "table1_out";
  std::uint64_t seed = 20000;
  int iterations = 20000;
  int burn_in = 100;
  int grid = 2001;
  double tolerance = 1e-12;
};

struct DemoResult {
  std::vector<NodeCheck> node_checks;
  double max_node_error = 0.0;
  bool theta_ok = false;
  // Largest |y - l^{(2k)}(x)| over the retained chaos-game points, per order 0, 2, 4.
  std::array<double, 3> chaos_deviation{};
  std::vector<std::filesystem::path> files;
};

DemoResult run_table1_demo(const DemoOptions& opts);

}  // namespace lfif
