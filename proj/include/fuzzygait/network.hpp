#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/gait_features.hpp"

namespace fuzzygait {

enum class Decision { Healthy, Patient };

inline std::string to_string(Decision d) { return d == Decision::Patient ? "Patient" : "Healthy"; }
inline int decision_sign(Decision d) { return d == Decision::Patient ? +1 : -1; }

struct SigmaPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// One fuzzy rule: Gaussian antecedents sharing the rule base's widths
/// unless an override is present (rules appended online carry their own
/// widths), and a crisp consequent in [-1, 1] (+1 leans patient).
struct FuzzyRule {
  Features centers{};
  double consequent = 0.0;
  std::optional<SigmaPair> sigma_override;
};

struct RuleBase {
  std::vector<FuzzyRule> rules;
  double sigma_lower = 0.01;
  double sigma_upper = 0.1;
  NormalizationParams normalization;

  SigmaPair widths_for(const FuzzyRule& rule) const {
    if (rule.sigma_override) return *rule.sigma_override;
    return {sigma_lower, sigma_upper};
  }
};

inline void validate_rule_base(const RuleBase& rb) {
  if (!(rb.sigma_lower > 0.0) || !(rb.sigma_upper >= rb.sigma_lower))
    throw ModelError("widths must satisfy 0 < sigma_lower <= sigma_upper");
  for (const auto& rule : rb.rules) {
    if (!(rule.consequent >= -1.0 && rule.consequent <= 1.0))
      throw ModelError("rule consequent outside [-1, 1]");
    for (double c : rule.centers)
      if (!std::isfinite(c)) throw ModelError("non-finite rule center");
    if (rule.sigma_override &&
        (!(rule.sigma_override->lower > 0.0) || !(rule.sigma_override->upper >= rule.sigma_override->lower)))
      throw ModelError("rule width override must satisfy 0 < lower <= upper");
  }
}

/// Lower/upper Gaussian membership of one input against one fuzzy set.
/// The narrower width decays faster, so the lower bound never exceeds the
/// upper one.
inline std::pair<double, double> membership_bounds(double x, double center, double sigma_lower,
                                                   double sigma_upper) {
  const double d2 = (x - center) * (x - center);
  return {std::exp(-0.5 * d2 / (sigma_lower * sigma_lower)),
          std::exp(-0.5 * d2 / (sigma_upper * sigma_upper))};
}

struct RuleFiring {
  double lower = 0.0;
  double upper = 0.0;
  double mean() const { return 0.5 * (lower + upper); }
};

/// Firing strength interval of one rule: minimum t-norm over the ten
/// per-feature membership bounds.
inline RuleFiring fire_rule(const Features& x, const FuzzyRule& rule, double sigma_lower,
                            double sigma_upper) {
  RuleFiring f{1.0, 1.0};
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    const auto [lo, hi] = membership_bounds(x[j], rule.centers[j], sigma_lower, sigma_upper);
    f.lower = std::min(f.lower, lo);
    f.upper = std::min(f.upper, hi);
  }
  return f;
}

struct InferenceTrace {
  // memberships[i][j] = (lower, upper) membership of feature j in rule i.
  std::vector<std::array<std::pair<double, double>, kNumFeatures>> memberships;
  std::vector<RuleFiring> firings;
  double y_lower = 0.0;
  double y_upper = 0.0;
  double y = 0.0;
  Decision decision = Decision::Healthy;
  bool no_coverage = false;
};

/// Runs the full network: fuzzification, min t-norm, firing-weighted output
/// bounds, then y = y_lower + y_upper with patient iff y > 0. If a bound's
/// firing sum underflows below 1e-300 that bound is reported as 0 and the
/// trace is flagged no_coverage.
inline InferenceTrace infer(const Features& x, const RuleBase& rb) {
  if (rb.rules.empty()) throw ModelError("rule base is empty");

  InferenceTrace trace;
  trace.memberships.resize(rb.rules.size());
  trace.firings.resize(rb.rules.size());

  double num_lower = 0.0, den_lower = 0.0;
  double num_upper = 0.0, den_upper = 0.0;
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    const auto& rule = rb.rules[i];
    const SigmaPair sig = rb.widths_for(rule);
    RuleFiring f{1.0, 1.0};
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      const auto bounds = membership_bounds(x[j], rule.centers[j], sig.lower, sig.upper);
      trace.memberships[i][j] = bounds;
      f.lower = std::min(f.lower, bounds.first);
      f.upper = std::min(f.upper, bounds.second);
    }
    trace.firings[i] = f;
    num_lower += rule.consequent * f.lower;
    den_lower += f.lower;
    num_upper += rule.consequent * f.upper;
    den_upper += f.upper;
  }

  if (den_lower < 1e-300) {
    trace.y_lower = 0.0;
    trace.no_coverage = true;
  } else {
    trace.y_lower = num_lower / den_lower;
  }
  if (den_upper < 1e-300) {
    trace.y_upper = 0.0;
    trace.no_coverage = true;
  } else {
    trace.y_upper = num_upper / den_upper;
  }
  trace.y = trace.y_lower + trace.y_upper;
  trace.decision = trace.y > 0.0 ? Decision::Patient : Decision::Healthy;
  return trace;
}

/// Classification shortcut: +1 patient, -1 healthy.
inline int classify(const Features& x, const RuleBase& rb) {
  return decision_sign(infer(x, rb).decision);
}

/// Type-1 companion system: both widths pinned to the midpoint of the
/// rule base's width interval (overrides collapse the same way). With equal
/// widths the two output bounds coincide and the decision reduces to the
/// sign of a type-1 Mamdani output.
inline RuleBase collapse_to_type1(const RuleBase& rb) {
  RuleBase t1 = rb;
  const double mid = 0.5 * (rb.sigma_lower + rb.sigma_upper);
  t1.sigma_lower = mid;
  t1.sigma_upper = mid;
  for (auto& rule : t1.rules)
    if (rule.sigma_override) {
      const double rmid = 0.5 * (rule.sigma_override->lower + rule.sigma_override->upper);
      rule.sigma_override = SigmaPair{rmid, rmid};
    }
  return t1;
}

}  // namespace fuzzygait
