#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lfif/analysis.hpp"
#include "lfif/fif.hpp"

namespace lfif {

inline constexpr int kModelFormatVersion = 1;

// 17 significant digits; parses back to the identical double.
std::string format_double(double v);
double parse_double(const std::string& text);

struct Dataset {
  LidstoneData data;
  std::optional<ScalingVector> scaling;
};

// Header `n,x,y0,y2,...,y2p[,alpha]`, one row per node, alpha blank on row 0.
void write_dataset_csv(std::ostream& os, const LidstoneData& data,
                       const std::optional<ScalingVector>& scaling = std::nullopt);
Dataset read_dataset_csv(std::istream& is);

// Partition, p, data, alpha and q_n coefficients (in t) as decimal strings.
nlohmann::json model_to_json(const LidstoneFif& fif);
LidstoneFif model_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json reports_to_json(const std::vector<BoundReport>& reports);
nlohmann::json study_to_json(const ConvergenceStudy& s);
// `N,e0,e2,...,e2p`
void write_study_csv(std::ostream& os, const ConvergenceStudy& s);

void write_sample_csv(std::ostream& os, const AttractorSample& s);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lfif
