#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/fcm.hpp"
#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/network.hpp"

namespace fuzzygait {

struct BatchConfig {
  std::size_t rule_count = 2;
  double sigma1 = 0.01;  // lower membership width
  double sigma2 = 0.1;   // upper membership width
  FcmConfig fcm;         // cluster_count is taken from rule_count
};

/// Learns a rule base from normalized samples: each sample is augmented with
/// its +-1 label into an 11-dimensional vector and clustered; a cluster's
/// first ten center coordinates become the rule's antecedent centers and the
/// membership-weighted label average becomes its consequent.
inline RuleBase batch_train(const std::vector<FeatureVector>& samples, const BatchConfig& cfg,
                            const NormalizationParams& normalization,
                            std::ostream* warnings = nullptr) {
  if (cfg.rule_count < 1) throw ConfigError("rule count must be >= 1");
  if (!(cfg.sigma1 > 0.0) || !(cfg.sigma2 >= cfg.sigma1))
    throw ConfigError("widths must satisfy 0 < sigma1 <= sigma2");
  if (samples.size() < cfg.rule_count)
    throw ConfigError("rule count " + std::to_string(cfg.rule_count) + " exceeds sample count " +
                      std::to_string(samples.size()));

  bool has_patient = false, has_control = false;
  for (const auto& s : samples) {
    if (s.label != 1 && s.label != -1) throw ContractError("labels must be +1 or -1");
    (s.label == 1 ? has_patient : has_control) = true;
  }
  if (warnings && (!has_patient || !has_control))
    *warnings << "warning: training set is single-class; all consequents will share one sign\n";

  std::vector<std::vector<double>> augmented(samples.size(), std::vector<double>(kNumFeatures + 1));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (std::size_t j = 0; j < kNumFeatures; ++j) augmented[k][j] = samples[k].x[j];
    augmented[k][kNumFeatures] = static_cast<double>(samples[k].label);
  }

  FcmConfig fcm_cfg = cfg.fcm;
  fcm_cfg.cluster_count = cfg.rule_count;
  const FcmResult clustering = fcm_cluster(augmented, fcm_cfg);

  RuleBase rb;
  rb.sigma_lower = cfg.sigma1;
  rb.sigma_upper = cfg.sigma2;
  rb.normalization = normalization;
  const double m = fcm_cfg.fuzzifier;
  for (std::size_t i = 0; i < cfg.rule_count; ++i) {
    FuzzyRule rule;
    // The label coordinate of the cluster center is dropped from the
    // antecedent; the consequent comes from the weighted label average.
    for (std::size_t j = 0; j < kNumFeatures; ++j) rule.centers[j] = clustering.centers[i][j];
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double w = std::pow(clustering.memberships[k][i], m);
      num += w * static_cast<double>(samples[k].label);
      den += w;
    }
    rule.consequent = den > 0.0 ? num / den : 0.0;
    rb.rules.push_back(std::move(rule));
  }
  return rb;
}

/// Convenience path for training from unnormalized rows: fits the
/// normalization, applies it, runs batch_train, embeds the parameters.
inline RuleBase train_model(const std::vector<FeatureRow>& rows, const BatchConfig& cfg,
                            std::ostream* warnings = nullptr, bool relaxed_normalization = false) {
  const NormalizationParams params =
      relaxed_normalization ? fit_normalization_with_fallback(rows) : fit_normalization(rows);
  std::vector<FeatureVector> samples;
  samples.reserve(rows.size());
  for (const auto& row : rows) samples.push_back(normalize_row(row, params));
  return batch_train(samples, cfg, params, warnings);
}

enum class PhiMode { Mean, Lower, Upper };

inline PhiMode phi_mode_from_string(std::string_view s) {
  if (s == "mean") return PhiMode::Mean;
  if (s == "lower") return PhiMode::Lower;
  if (s == "upper") return PhiMode::Upper;
  throw ConfigError("phi mode must be mean, lower or upper");
}

struct OnlineConfig {
  double theta_c = 0.1;          // coverage threshold
  double epsilon = 1.0;          // width scale for appended rules
  PhiMode phi = PhiMode::Mean;   // which firing strength feeds the coverage sum
};

enum class UpdateKind { NoChangeCorrect, NoChangeCovered, RuleAdded };

struct UpdateOutcome {
  UpdateKind kind = UpdateKind::NoChangeCorrect;
  std::optional<double> coverage;        // summed firing strength, when computed
  std::optional<std::size_t> rule_index; // index of the appended rule
};

/// One step of the complementary online learner. A correctly classified
/// sample changes nothing. A misclassified sample whose summed firing
/// strength falls below theta_c spawns a new rule centred on the sample,
/// with the sample's label as consequent and epsilon-scaled widths; existing
/// rules are never touched.
inline UpdateOutcome online_update(RuleBase& rb, const FeatureVector& sample,
                                   const OnlineConfig& cfg) {
  if (!(cfg.theta_c > 0.0)) throw ConfigError("coverage threshold must be positive");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  for (double v : sample.x)
    if (v < -1e-9 || v > 1.0 + 1e-9)
      throw ContractError("online update expects inputs normalized to [0, 1]");
  if (sample.label != 1 && sample.label != -1) throw ContractError("labels must be +1 or -1");

  const InferenceTrace trace = infer(sample.x, rb);
  if (decision_sign(trace.decision) == sample.label) return {UpdateKind::NoChangeCorrect, {}, {}};

  double coverage = 0.0;
  for (const auto& f : trace.firings) {
    switch (cfg.phi) {
      case PhiMode::Mean: coverage += f.mean(); break;
      case PhiMode::Lower: coverage += f.lower; break;
      case PhiMode::Upper: coverage += f.upper; break;
    }
  }
  if (coverage >= cfg.theta_c) return {UpdateKind::NoChangeCovered, coverage, {}};

  FuzzyRule rule;
  rule.centers = sample.x;
  rule.consequent = static_cast<double>(sample.label);
  rule.sigma_override = SigmaPair{cfg.epsilon * rb.sigma_lower, cfg.epsilon * rb.sigma_upper};
  rb.rules.push_back(std::move(rule));
  return {UpdateKind::RuleAdded, coverage, rb.rules.size() - 1};
}

}  // namespace fuzzygait
