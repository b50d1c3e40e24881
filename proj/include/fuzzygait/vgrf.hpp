#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzygait/common.hpp"

namespace fuzzygait {

enum class Cohort { Patient, Control };
enum class Dataset { Ga, Ju, Si };

inline std::string to_string(Cohort c) { return c == Cohort::Patient ? "Patient" : "Control"; }
inline std::string to_string(Dataset d) {
  switch (d) {
    case Dataset::Ga: return "Ga";
    case Dataset::Ju: return "Ju";
    default: return "Si";
  }
}

inline Cohort cohort_from_string(std::string_view s) {
  if (s == "Patient") return Cohort::Patient;
  if (s == "Control") return Cohort::Control;
  throw ParseError("unknown cohort: '" + std::string(s) + "'");
}

inline Dataset dataset_from_string(std::string_view s) {
  if (s == "Ga") return Dataset::Ga;
  if (s == "Ju") return Dataset::Ju;
  if (s == "Si") return Dataset::Si;
  throw ParseError("unknown dataset tag: '" + std::string(s) + "'");
}

/// One recorded walk: time plus 18 force channels at a nominal 100 Hz.
/// Sensors 0-7 are under the left foot, 8-15 under the right foot; the two
/// total channels carry the summed force per foot.
struct VgrfRecording {
  std::string subject_id;
  Cohort cohort = Cohort::Control;
  Dataset dataset = Dataset::Ga;
  double sample_rate_hz = 100.0;
  std::vector<double> time_s;
  std::array<std::vector<double>, 16> sensors_n;
  std::vector<double> total_left_n;
  std::vector<double> total_right_n;

  std::size_t size() const { return time_s.size(); }
  double duration_s() const { return time_s.empty() ? 0.0 : time_s.back() - time_s.front(); }

  /// All 18 force channels (16 sensors, then total left, total right).
  template <typename Fn>
  void for_each_channel(Fn&& fn) {
    for (auto& s : sensors_n) fn(s);
    fn(total_left_n);
    fn(total_right_n);
  }
};

/// Optional subject_id -> cohort override, loaded from a
/// `subject_id,cohort,dataset` CSV.
struct LabelTable {
  std::map<std::string, Cohort> cohort_by_subject;
};

inline LabelTable load_label_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError("label file is empty: " + path.string());
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "subject_id" || header[1] != "cohort" || header[2] != "dataset")
    throw ParseError("label file must start with 'subject_id,cohort,dataset': " + path.string());
  LabelTable table;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() < 3)
      throw ParseError(path.string() + ": row " + std::to_string(row) + ": expected 3 fields");
    table.cohort_by_subject[fields[0]] = cohort_from_string(fields[1]);
  }
  return table;
}

namespace detail {

struct FilenameInfo {
  std::string subject_id;
  Dataset dataset;
  Cohort cohort;
};

/// Decodes the `GaPt03_01.txt` naming convention: dataset prefix (Ga/Ju/Si),
/// cohort token (Pt/Co), subject number; the suffix after '_' is the walk
/// index and stays out of the subject id.
inline std::optional<FilenameInfo> decode_filename(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  if (stem.size() < 5) return std::nullopt;
  const std::string prefix = stem.substr(0, 2);
  Dataset ds;
  if (prefix == "Ga") ds = Dataset::Ga;
  else if (prefix == "Ju") ds = Dataset::Ju;
  else if (prefix == "Si") ds = Dataset::Si;
  else return std::nullopt;
  const std::string token = stem.substr(2, 2);
  Cohort cohort;
  if (token == "Pt") cohort = Cohort::Patient;
  else if (token == "Co") cohort = Cohort::Control;
  else return std::nullopt;
  const std::size_t underscore = stem.find('_');
  return FilenameInfo{stem.substr(0, underscore), ds, cohort};
}

}  // namespace detail

/// Parses one 19-column whitespace-separated recording file. Column 1 is
/// time in seconds, columns 2-9 the left sensors, 10-17 the right sensors,
/// 18/19 the per-foot totals. Cohort comes from the filename convention
/// unless the label table overrides it.
inline VgrfRecording parse_recording(const std::filesystem::path& path,
                                     const LabelTable* labels = nullptr,
                                     double sample_rate_hz = 100.0) {
  auto info = detail::decode_filename(path);
  if (!info)
    throw ParseError("unrecognized recording filename: " + path.filename().string());

  std::ifstream in(path);
  if (!in) throw DataError("cannot open recording: " + path.string());

  VgrfRecording rec;
  rec.subject_id = info->subject_id;
  rec.dataset = info->dataset;
  rec.cohort = info->cohort;
  rec.sample_rate_hz = sample_rate_hz;
  if (labels) {
    auto it = labels->cohort_by_subject.find(rec.subject_id);
    if (it != labels->cohort_by_subject.end()) rec.cohort = it->second;
  }

  const double nominal_dt = 1.0 / sample_rate_hz;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;  // blank line
    if (tokens.size() != 19)
      throw ParseError(path.filename().string() + ": row " + std::to_string(row) +
                       ": expected 19 columns, got " + std::to_string(tokens.size()));
    std::array<double, 19> cols{};
    for (std::size_t c = 0; c < 19; ++c) {
      try {
        cols[c] = parse_double_strict(tokens[c]);
      } catch (const ParseError&) {
        throw ParseError(path.filename().string() + ": row " + std::to_string(row) +
                         ": column " + std::to_string(c + 1) + " is not numeric");
      }
      if (!std::isfinite(cols[c]))
        throw DataError(path.filename().string() + ": row " + std::to_string(row) +
                        ": non-finite value");
      if (c > 0 && cols[c] < 0.0)
        throw DataError(path.filename().string() + ": row " + std::to_string(row) +
                        ": negative force");
    }
    if (!rec.time_s.empty()) {
      const double dt = cols[0] - rec.time_s.back();
      if (dt <= 0.0)
        throw DataError(path.filename().string() + ": row " + std::to_string(row) +
                        ": time not strictly increasing");
      if (std::abs(dt - nominal_dt) > 0.01 * nominal_dt)
        throw DataError(path.filename().string() + ": row " + std::to_string(row) +
                        ": sample spacing " + format_double(dt) + " deviates from nominal " +
                        format_double(nominal_dt) + " by more than 1%");
    }
    rec.time_s.push_back(cols[0]);
    for (std::size_t s = 0; s < 16; ++s) rec.sensors_n[s].push_back(cols[1 + s]);
    rec.total_left_n.push_back(cols[17]);
    rec.total_right_n.push_back(cols[18]);
  }
  if (rec.time_s.empty())
    throw DataError("empty recording: " + path.string());
  return rec;
}

/// Writes a recording back in the 19-column text format. Values use the
/// shortest round-tripping decimal form, so parse(serialize(r)) reproduces
/// every sequence bit for bit.
inline void serialize_recording(const VgrfRecording& rec, std::ostream& out) {
  for (std::size_t k = 0; k < rec.size(); ++k) {
    out << format_double(rec.time_s[k]);
    for (std::size_t s = 0; s < 16; ++s) out << '\t' << format_double(rec.sensors_n[s][k]);
    out << '\t' << format_double(rec.total_left_n[k]);
    out << '\t' << format_double(rec.total_right_n[k]);
    out << '\n';
  }
}

inline std::string serialize_recording(const VgrfRecording& rec) {
  std::ostringstream os;
  serialize_recording(rec, os);
  return os.str();
}

/// Loads every recognized recording under `dir`, lexicographically by
/// filename. An empty filter set accepts all three dataset tags. Files that
/// do not match the naming convention are skipped with a warning.
inline std::vector<VgrfRecording> load_dataset(const std::filesystem::path& dir,
                                               const std::set<Dataset>& filter = {},
                                               const LabelTable* labels = nullptr,
                                               std::ostream* warnings = nullptr) {
  if (!std::filesystem::is_directory(dir))
    throw DataError("not a directory: " + dir.string());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

  std::vector<VgrfRecording> out;
  for (const auto& path : files) {
    auto info = path.extension() == ".txt" ? detail::decode_filename(path) : std::nullopt;
    if (!info) {
      if (warnings) *warnings << "warning: skipping unrecognized file " << path.filename().string() << "\n";
      continue;
    }
    if (!filter.empty() && !filter.count(info->dataset)) continue;
    out.push_back(parse_recording(path, labels));
  }
  if (out.empty())
    throw DataError("no matching recordings in " + dir.string());
  return out;
}

}  // namespace fuzzygait
