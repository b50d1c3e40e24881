#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzygait/common.hpp"
#include "fuzzygait/network.hpp"

namespace fuzzygait {

struct FuzzySetSample {
  std::size_t feature = 0;  // 1-based, matching x1..x10
  std::size_t rule = 0;     // 1-based, matching R1..Rn
  double x = 0.0;
  double mu_lower = 0.0;
  double mu_upper = 0.0;
};

/// Samples every rule's LMF/UMF pair for every feature on an even grid over
/// [0, 1]; the raw material for fuzzy-set plots.
inline std::vector<FuzzySetSample> export_fuzzy_sets(const RuleBase& rb,
                                                     std::size_t samples_per_curve = 201) {
  if (rb.rules.empty()) throw ModelError("rule base is empty");
  if (samples_per_curve < 2) throw ConfigError("need at least 2 samples per curve");

  std::vector<FuzzySetSample> out;
  out.reserve(kNumFeatures * rb.rules.size() * samples_per_curve);
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    for (std::size_t i = 0; i < rb.rules.size(); ++i) {
      const SigmaPair sig = rb.widths_for(rb.rules[i]);
      for (std::size_t t = 0; t < samples_per_curve; ++t) {
        const double x = static_cast<double>(t) / static_cast<double>(samples_per_curve - 1);
        const auto [lo, hi] = membership_bounds(x, rb.rules[i].centers[j], sig.lower, sig.upper);
        out.push_back({j + 1, i + 1, x, lo, hi});
      }
    }
  }
  return out;
}

inline std::string write_fuzzy_sets_csv(const std::vector<FuzzySetSample>& samples) {
  std::string out = "feature,rule,x,mu_lower,mu_upper\n";
  for (const auto& s : samples) {
    out += std::to_string(s.feature) + "," + std::to_string(s.rule) + "," + format_double(s.x) +
           "," + format_double(s.mu_lower) + "," + format_double(s.mu_upper) + "\n";
  }
  return out;
}

struct RuleGridRow {
  std::size_t rule = 0;  // 1-based
  Features centers{};
  double consequent = 0.0;
  std::string lean;  // "Patient" for a positive consequent, "Healthy" otherwise
};

/// One row per rule (online additions included), columns x1..x10 holding
/// the antecedent centers plus the consequent and its class lean.
inline std::vector<RuleGridRow> export_rule_grid(const RuleBase& rb) {
  if (rb.rules.empty()) throw ModelError("rule base is empty");
  std::vector<RuleGridRow> rows;
  rows.reserve(rb.rules.size());
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    const auto& rule = rb.rules[i];
    rows.push_back({i + 1, rule.centers, rule.consequent,
                    rule.consequent > 0.0 ? "Patient" : "Healthy"});
  }
  return rows;
}

inline std::string write_rule_grid_csv(const std::vector<RuleGridRow>& rows) {
  std::string out = "rule";
  for (std::size_t j = 1; j <= kNumFeatures; ++j) out += ",x" + std::to_string(j);
  out += ",consequent,lean\n";
  char buf[32];
  for (const auto& row : rows) {
    out += "R" + std::to_string(row.rule);
    for (double c : row.centers) {
      std::snprintf(buf, sizeof(buf), "%.2f", c);
      out += ",";
      out += buf;
    }
    out += "," + format_double(row.consequent) + "," + row.lean + "\n";
  }
  return out;
}

struct RuleContribution {
  std::size_t rule = 0;  // 1-based
  double phi_lower = 0.0;
  double phi_upper = 0.0;
  double phi_mean = 0.0;
  double consequent = 0.0;
  std::size_t argmin_feature = 0;  // 1-based; the coordinate that set the min t-norm
};

struct Explanation {
  std::vector<RuleContribution> ranked;  // by mean firing strength, descending
  double y_lower = 0.0;
  double y_upper = 0.0;
  double y = 0.0;
  Decision decision = Decision::Healthy;
  bool no_coverage = false;
};

/// Decision breakdown for one input: every rule with its firing interval,
/// ranked by mean firing strength, plus the network outputs the ranking
/// feeds. The argmin feature is the coordinate farthest from the rule's
/// center, i.e. the one that decided both bounds under the min t-norm.
inline Explanation explain(const Features& x, const RuleBase& rb) {
  const InferenceTrace trace = infer(x, rb);

  Explanation ex;
  ex.y_lower = trace.y_lower;
  ex.y_upper = trace.y_upper;
  ex.y = trace.y;
  ex.decision = trace.decision;
  ex.no_coverage = trace.no_coverage;
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    std::size_t argmin = 0;
    double worst = -1.0;
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      const double d = std::abs(x[j] - rb.rules[i].centers[j]);
      if (d > worst) {
        worst = d;
        argmin = j;
      }
    }
    ex.ranked.push_back({i + 1, trace.firings[i].lower, trace.firings[i].upper,
                         trace.firings[i].mean(), rb.rules[i].consequent, argmin + 1});
  }
  std::stable_sort(ex.ranked.begin(), ex.ranked.end(),
                   [](const RuleContribution& a, const RuleContribution& b) {
                     return a.phi_mean > b.phi_mean;
                   });
  return ex;
}

inline nlohmann::json explanation_to_json(const Explanation& ex) {
  nlohmann::json j;
  j["y_lower"] = ex.y_lower;
  j["y_upper"] = ex.y_upper;
  j["y"] = ex.y;
  j["decision"] = to_string(ex.decision);
  j["no_coverage"] = ex.no_coverage;
  j["rules"] = nlohmann::json::array();
  for (const auto& rc : ex.ranked) {
    j["rules"].push_back({{"rule", rc.rule},
                          {"phi_lower", rc.phi_lower},
                          {"phi_upper", rc.phi_upper},
                          {"phi_mean", rc.phi_mean},
                          {"consequent", rc.consequent},
                          {"argmin_feature", rc.argmin_feature}});
  }
  return j;
}

}  // namespace fuzzygait
