#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/learning.hpp"
#include "fuzzygait/network.hpp"

namespace fuzzygait {

/// Confusion counts plus the derived ratios; Patient (+1) is the positive
/// class. Ratios live in [0, 1]; _defined flags drop when a denominator is
/// empty, in which case the ratio is reported as 0.
struct MetricsReport {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  double accuracy = 0.0, precision = 0.0, recall = 0.0, f1 = 0.0;
  bool precision_defined = true, recall_defined = true, f1_defined = true;

  std::size_t total() const { return tp + tn + fp + fn; }
};

inline MetricsReport metrics_from_counts(std::size_t tp, std::size_t tn, std::size_t fp,
                                         std::size_t fn) {
  MetricsReport m;
  m.tp = tp;
  m.tn = tn;
  m.fp = fp;
  m.fn = fn;
  if (m.total() == 0) throw ContractError("metrics over zero samples");
  m.accuracy = static_cast<double>(tp + tn) / static_cast<double>(m.total());
  if (tp + fp == 0) {
    m.precision_defined = false;
  } else {
    m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    m.recall_defined = false;
  } else {
    m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_defined = false;
  }
  return m;
}

/// Labels are +-1 with +1 (Patient) positive.
inline MetricsReport compute_metrics(const std::vector<int>& truths,
                                     const std::vector<int>& predictions) {
  if (truths.size() != predictions.size()) throw ContractError("truth/prediction length mismatch");
  if (truths.empty()) throw ContractError("metrics over zero samples");
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t k = 0; k < truths.size(); ++k) {
    const bool truth_patient = truths[k] == 1;
    const bool pred_patient = predictions[k] == 1;
    if (truth_patient && pred_patient) ++tp;
    else if (!truth_patient && !pred_patient) ++tn;
    else if (!truth_patient && pred_patient) ++fp;
    else ++fn;
  }
  return metrics_from_counts(tp, tn, fp, fn);
}

struct SamplePrediction {
  std::string subject_id;
  Dataset dataset = Dataset::Ga;
  int truth = -1;
  int predicted = -1;
};

inline MetricsReport metrics_from_predictions(const std::vector<SamplePrediction>& preds,
                                              std::optional<Dataset> only = std::nullopt) {
  std::vector<int> truths, predictions;
  for (const auto& p : preds) {
    if (only && p.dataset != *only) continue;
    truths.push_back(p.truth);
    predictions.push_back(p.predicted);
  }
  return compute_metrics(truths, predictions);
}

/// Applies a trained model to unnormalized rows.
inline std::vector<SamplePrediction> predict_rows(const RuleBase& rb,
                                                  const std::vector<FeatureRow>& rows) {
  std::vector<SamplePrediction> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const FeatureVector fv = normalize_row(row, rb.normalization);
    out.push_back({row.subject_id, row.dataset, row.label, classify(fv.x, rb)});
  }
  return out;
}

enum class Grouping { PerSubject, PerSample };

inline Grouping grouping_from_string(std::string_view s) {
  if (s == "subject") return Grouping::PerSubject;
  if (s == "sample") return Grouping::PerSample;
  throw ConfigError("grouping must be 'subject' or 'sample'");
}

namespace detail {

/// Fold index lists in deterministic order: subjects sorted by id, samples
/// in input order.
inline std::vector<std::vector<std::size_t>> build_folds(const std::vector<FeatureRow>& rows,
                                                         Grouping grouping) {
  std::vector<std::vector<std::size_t>> folds;
  if (grouping == Grouping::PerSample) {
    for (std::size_t k = 0; k < rows.size(); ++k) folds.push_back({k});
  } else {
    std::map<std::string, std::vector<std::size_t>> by_subject;
    for (std::size_t k = 0; k < rows.size(); ++k) by_subject[rows[k].subject_id].push_back(k);
    for (auto& [id, idx] : by_subject) folds.push_back(std::move(idx));
  }
  return folds;
}

}  // namespace detail

struct LoocvResult {
  MetricsReport metrics;  // pooled over all folds
  std::vector<SamplePrediction> predictions;
};

/// Leave-one-group-out cross-validation: for each held-out group a fresh
/// normalization and rule base are fitted on the remaining rows. Per-subject
/// grouping (the default) keeps all walks of one subject together.
inline LoocvResult loocv(const std::vector<FeatureRow>& rows, const BatchConfig& cfg,
                         Grouping grouping = Grouping::PerSubject,
                         std::ostream* warnings = nullptr) {
  const auto folds = detail::build_folds(rows, grouping);
  if (folds.size() < 2) throw ContractError("cross-validation needs at least 2 groups");

  LoocvResult result;
  std::vector<char> held(rows.size());
  for (const auto& fold : folds) {
    std::fill(held.begin(), held.end(), 0);
    for (std::size_t k : fold) held[k] = 1;
    std::vector<FeatureRow> train;
    train.reserve(rows.size() - fold.size());
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (!held[k]) train.push_back(rows[k]);

    const NormalizationParams params = fit_normalization_with_fallback(train);
    std::vector<FeatureVector> samples;
    samples.reserve(train.size());
    for (const auto& row : train) samples.push_back(normalize_row(row, params));
    const RuleBase rb = batch_train(samples, cfg, params, warnings);

    for (std::size_t k : fold) {
      const FeatureVector fv = normalize_row(rows[k], params);
      result.predictions.push_back(
          {rows[k].subject_id, rows[k].dataset, rows[k].label, classify(fv.x, rb)});
    }
  }
  result.metrics = metrics_from_predictions(result.predictions);
  return result;
}

struct SweepRow {
  std::size_t rule_count = 0;
  std::vector<double> f1_per_seed;
  double f1_mean = 0.0;
  double f1_std = 0.0;  // population std over seeds
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t recommended_rule_count = 0;
};

/// Cross-validated F1 for each candidate rule count over `seeds` seeded
/// runs (seed, seed+1, ...). The recommendation is the smallest rule count
/// whose mean F1 lies within one pooled standard deviation of the best
/// mean, favouring compact rule bases among statistically equivalent ones.
inline SweepResult sweep_rule_count(const std::vector<FeatureRow>& rows,
                                    const std::vector<std::size_t>& rule_counts,
                                    std::size_t seeds, const BatchConfig& base,
                                    Grouping grouping = Grouping::PerSubject,
                                    std::ostream* warnings = nullptr) {
  if (rule_counts.empty()) throw ConfigError("empty rule-count range");
  if (seeds < 1) throw ConfigError("need at least one seed");

  SweepResult result;
  for (std::size_t r : rule_counts) {
    SweepRow row;
    row.rule_count = r;
    for (std::size_t s = 0; s < seeds; ++s) {
      BatchConfig cfg = base;
      cfg.rule_count = r;
      cfg.fcm.seed = base.fcm.seed + s;
      row.f1_per_seed.push_back(loocv(rows, cfg, grouping, warnings).metrics.f1);
    }
    row.f1_mean = mean(row.f1_per_seed);
    row.f1_std = population_stddev(row.f1_per_seed);
    result.rows.push_back(std::move(row));
  }

  double best_mean = result.rows.front().f1_mean;
  double var_sum = 0.0;
  for (const auto& row : result.rows) {
    best_mean = std::max(best_mean, row.f1_mean);
    var_sum += row.f1_std * row.f1_std;
  }
  const double pooled_std = std::sqrt(var_sum / static_cast<double>(result.rows.size()));

  std::size_t best_r = 0;
  for (const auto& row : result.rows)
    if (row.f1_mean >= best_mean - pooled_std && (best_r == 0 || row.rule_count < best_r))
      best_r = row.rule_count;
  result.recommended_rule_count = best_r;
  return result;
}

enum class FuzzyVariant { IT2, T1 };

inline std::string to_string(FuzzyVariant v) { return v == FuzzyVariant::IT2 ? "IT2" : "T1"; }

struct NoiseCell {
  double noise_sigma = 0.0;
  std::optional<Dataset> dataset;  // nullopt = pooled over all rows
  FuzzyVariant variant = FuzzyVariant::IT2;
  MetricsReport metrics;
};

struct NoiseExperimentResult {
  std::vector<NoiseCell> cells;

  const MetricsReport& get(double sigma, std::optional<Dataset> dataset, FuzzyVariant variant) const {
    for (const auto& c : cells)
      if (c.noise_sigma == sigma && c.dataset == dataset && c.variant == variant) return c.metrics;
    throw Error("no such noise-experiment cell");
  }
};

/// Robustness comparison of the interval type-2 system against its type-1
/// collapse (both widths at the midpoint of [sigma1, sigma2]). Runs one
/// pooled cross-validation per noise level; held-out feature vectors are
/// perturbed coordinate-wise with zero-mean Gaussian noise after
/// normalization, clipped back to [0, 1], and classified by both variants
/// on the same perturbed vector. Metrics are reported pooled and per
/// dataset tag.
inline NoiseExperimentResult noise_experiment(const std::vector<FeatureRow>& rows,
                                              const BatchConfig& cfg,
                                              const std::vector<double>& noise_sigmas,
                                              Grouping grouping = Grouping::PerSubject,
                                              std::ostream* warnings = nullptr) {
  if (noise_sigmas.empty()) throw ConfigError("no noise widths given");
  for (double s : noise_sigmas)
    if (s < 0.0) throw ConfigError("noise width must be nonnegative");

  const auto folds = detail::build_folds(rows, grouping);
  if (folds.size() < 2) throw ContractError("cross-validation needs at least 2 groups");

  // Fold models do not depend on the noise level; train once.
  struct FoldModel {
    NormalizationParams params;
    RuleBase it2;
    RuleBase t1;
    std::vector<std::size_t> held;
  };
  std::vector<FoldModel> models;
  std::vector<char> held(rows.size());
  for (const auto& fold : folds) {
    std::fill(held.begin(), held.end(), 0);
    for (std::size_t k : fold) held[k] = 1;
    std::vector<FeatureRow> train;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (!held[k]) train.push_back(rows[k]);
    FoldModel fm;
    fm.params = fit_normalization_with_fallback(train);
    std::vector<FeatureVector> samples;
    for (const auto& row : train) samples.push_back(normalize_row(row, fm.params));
    fm.it2 = batch_train(samples, cfg, fm.params, warnings);
    fm.t1 = collapse_to_type1(fm.it2);
    fm.held = fold;
    models.push_back(std::move(fm));
  }

  std::vector<Dataset> present;
  for (const auto& row : rows)
    if (std::find(present.begin(), present.end(), row.dataset) == present.end())
      present.push_back(row.dataset);
  std::sort(present.begin(), present.end());

  NoiseExperimentResult result;
  for (std::size_t si = 0; si < noise_sigmas.size(); ++si) {
    const double sigma = noise_sigmas[si];
    // One noise stream per level, keyed on the level itself, so adding or
    // reordering levels does not change another level's draws.
    Rng rng(cfg.fcm.seed * 0x9E3779B97F4A7C15ull + std::bit_cast<std::uint64_t>(sigma));
    std::vector<SamplePrediction> it2_preds, t1_preds;
    for (const auto& fm : models) {
      for (std::size_t k : fm.held) {
        FeatureVector fv = normalize_row(rows[k], fm.params);
        for (double& v : fv.x) v = std::clamp(v + sigma * rng.gaussian(), 0.0, 1.0);
        it2_preds.push_back({rows[k].subject_id, rows[k].dataset, rows[k].label, classify(fv.x, fm.it2)});
        t1_preds.push_back({rows[k].subject_id, rows[k].dataset, rows[k].label, classify(fv.x, fm.t1)});
      }
    }
    result.cells.push_back({sigma, std::nullopt, FuzzyVariant::IT2, metrics_from_predictions(it2_preds)});
    result.cells.push_back({sigma, std::nullopt, FuzzyVariant::T1, metrics_from_predictions(t1_preds)});
    for (Dataset ds : present) {
      result.cells.push_back({sigma, ds, FuzzyVariant::IT2, metrics_from_predictions(it2_preds, ds)});
      result.cells.push_back({sigma, ds, FuzzyVariant::T1, metrics_from_predictions(t1_preds, ds)});
    }
  }
  return result;
}

}  // namespace fuzzygait
