#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fuzzygait/common.hpp"
#include "fuzzygait/network.hpp"

namespace fuzzygait {

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json rule_base_to_json(const RuleBase& rb) {
  nlohmann::json j;
  j["version"] = kModelFormatVersion;
  j["sigma_lower"] = rb.sigma_lower;
  j["sigma_upper"] = rb.sigma_upper;
  j["normalization"]["mins"] = rb.normalization.mins;
  j["normalization"]["maxs"] = rb.normalization.maxs;
  j["rules"] = nlohmann::json::array();
  for (const auto& rule : rb.rules) {
    nlohmann::json rj;
    rj["centers"] = rule.centers;
    rj["consequent"] = rule.consequent;
    if (rule.sigma_override) {
      rj["sigma_override"]["lower"] = rule.sigma_override->lower;
      rj["sigma_override"]["upper"] = rule.sigma_override->upper;
    }
    j["rules"].push_back(std::move(rj));
  }
  return j;
}

inline RuleBase rule_base_from_json(const nlohmann::json& j) {
  try {
    if (!j.contains("version")) throw ModelError("model file has no version field");
    if (j.at("version").get<int>() != kModelFormatVersion)
      throw ModelError("unsupported model version " + j.at("version").dump());

    RuleBase rb;
    rb.sigma_lower = j.at("sigma_lower").get<double>();
    rb.sigma_upper = j.at("sigma_upper").get<double>();
    const auto& norm = j.at("normalization");
    const auto mins = norm.at("mins").get<std::vector<double>>();
    const auto maxs = norm.at("maxs").get<std::vector<double>>();
    if (mins.size() != kNumFeatures || maxs.size() != kNumFeatures)
      throw ModelError("normalization must carry exactly " + std::to_string(kNumFeatures) +
                       " mins and maxs");
    std::copy(mins.begin(), mins.end(), rb.normalization.mins.begin());
    std::copy(maxs.begin(), maxs.end(), rb.normalization.maxs.begin());

    for (const auto& rj : j.at("rules")) {
      FuzzyRule rule;
      const auto centers = rj.at("centers").get<std::vector<double>>();
      if (centers.size() != kNumFeatures)
        throw ModelError("rule must carry exactly " + std::to_string(kNumFeatures) + " centers");
      std::copy(centers.begin(), centers.end(), rule.centers.begin());
      rule.consequent = rj.at("consequent").get<double>();
      if (rj.contains("sigma_override")) {
        rule.sigma_override = SigmaPair{rj.at("sigma_override").at("lower").get<double>(),
                                        rj.at("sigma_override").at("upper").get<double>()};
      }
      rb.rules.push_back(std::move(rule));
    }
    validate_rule_base(rb);
    return rb;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
}

inline void save_rule_base(const RuleBase& rb, const std::filesystem::path& path) {
  write_file_atomic(path, rule_base_to_json(rb).dump(2) + "\n");
}

inline RuleBase load_rule_base(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("model file is not valid JSON: " + path.string() + ": " + e.what());
  }
  return rule_base_from_json(j);
}

}  // namespace fuzzygait
