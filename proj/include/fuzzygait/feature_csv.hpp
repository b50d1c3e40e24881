#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/gait_features.hpp"

namespace fuzzygait {

inline std::string feature_csv_header() {
  std::string h = "subject_id,dataset,label";
  for (std::size_t j = 1; j <= kNumFeatures; ++j) h += ",x" + std::to_string(j);
  return h;
}

inline std::string feature_csv_line(const FeatureRow& row) {
  std::string line = row.subject_id + "," + to_string(row.dataset) + "," + std::to_string(row.label);
  for (double v : row.x) line += "," + format_double(v);
  return line;
}

inline std::string write_feature_csv(const std::vector<FeatureRow>& rows) {
  std::string out = feature_csv_header() + "\n";
  for (const auto& row : rows) out += feature_csv_line(row) + "\n";
  return out;
}

inline std::vector<FeatureRow> parse_feature_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(origin + ": empty feature file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != feature_csv_header())
    throw ParseError(origin + ": unexpected header, want '" + feature_csv_header() + "'");

  std::vector<FeatureRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3 + kNumFeatures)
      throw ParseError(origin + ": row " + std::to_string(lineno) + ": expected " +
                       std::to_string(3 + kNumFeatures) + " fields, got " +
                       std::to_string(fields.size()));
    FeatureRow row;
    row.subject_id = fields[0];
    row.dataset = dataset_from_string(fields[1]);
    const double label = parse_double_strict(fields[2]);
    if (label != 1.0 && label != -1.0)
      throw ParseError(origin + ": row " + std::to_string(lineno) + ": label must be +1 or -1");
    row.label = static_cast<int>(label);
    for (std::size_t j = 0; j < kNumFeatures; ++j) row.x[j] = parse_double_strict(fields[3 + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<FeatureRow> read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature file: " + path.string());
  return parse_feature_csv(in, path.filename().string());
}

/// Sidecar with the unreduced z1..z14 values, one row per recording.
inline std::string write_raw_feature_csv(const std::vector<std::pair<FeatureRow, RawFeatures>>& rows) {
  std::string out = "subject_id,dataset,label";
  for (std::size_t j = 1; j <= 14; ++j) out += ",z" + std::to_string(j);
  out += "\n";
  for (const auto& [row, raw] : rows) {
    out += row.subject_id + "," + to_string(row.dataset) + "," + std::to_string(row.label);
    for (double v : raw.as_array()) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

/// Keeps only rows whose dataset tag is in `keep`; an empty set keeps all.
inline std::vector<FeatureRow> filter_rows(const std::vector<FeatureRow>& rows,
                                           const std::set<Dataset>& keep) {
  if (keep.empty()) return rows;
  std::vector<FeatureRow> out;
  for (const auto& row : rows)
    if (keep.count(row.dataset)) out.push_back(row);
  return out;
}

}  // namespace fuzzygait
