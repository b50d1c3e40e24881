#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/vgrf.hpp"

namespace fuzzygait {

/// One gait cycle for one foot: heel strike, toe off, next heel strike.
struct Stride {
  double stance_start_s = 0.0;  // heel strike (end of the previous swing)
  double swing_start_s = 0.0;   // toe off
  double stride_end_s = 0.0;    // next heel strike

  double swing_duration_s() const { return stride_end_s - swing_start_s; }
  double stride_duration_s() const { return stride_end_s - stance_start_s; }
  double swing_pct() const { return 100.0 * swing_duration_s() / stride_duration_s(); }
};

struct StrideTable {
  std::vector<Stride> strides;

  std::vector<double> swing_durations() const {
    std::vector<double> v;
    v.reserve(strides.size());
    for (const auto& s : strides) v.push_back(s.swing_duration_s());
    return v;
  }
  std::vector<double> stride_durations() const {
    std::vector<double> v;
    v.reserve(strides.size());
    for (const auto& s : strides) v.push_back(s.stride_duration_s());
    return v;
  }
  std::vector<double> swing_pcts() const {
    std::vector<double> v;
    v.reserve(strides.size());
    for (const auto& s : strides) v.push_back(s.swing_pct());
    return v;
  }
};

namespace detail {

/// Splits a time axis into contiguous runs; a gap larger than 1.5x the
/// nominal spacing starts a new run (excised turnaround intervals leave such
/// gaps behind).
inline std::vector<std::pair<std::size_t, std::size_t>> contiguous_chunks(
    const std::vector<double>& time_s) {
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  if (time_s.empty()) return chunks;
  if (time_s.size() == 1) {
    chunks.emplace_back(0, 1);
    return chunks;
  }
  std::vector<double> dts;
  dts.reserve(time_s.size() - 1);
  for (std::size_t k = 1; k < time_s.size(); ++k) dts.push_back(time_s[k] - time_s[k - 1]);
  const double nominal = median(dts);
  std::size_t start = 0;
  for (std::size_t k = 1; k < time_s.size(); ++k) {
    if (time_s[k] - time_s[k - 1] > 1.5 * nominal) {
      chunks.emplace_back(start, k);
      start = k;
    }
  }
  chunks.emplace_back(start, time_s.size());
  return chunks;
}

}  // namespace detail

/// Detects every stride in a per-foot total-force series without any
/// duration filtering. Swings are maximal runs with force below the
/// threshold; a stride spans from one swing's end (heel strike) to the
/// next one's end. Runs touching a chunk boundary cannot be closed and are
/// dropped.
inline std::vector<Stride> detect_strides(const std::vector<double>& time_s,
                                          const std::vector<double>& force_n,
                                          double threshold_n) {
  if (threshold_n <= 0.0) throw ConfigError("swing threshold must be positive");
  if (time_s.size() != force_n.size())
    throw ContractError("time and force lengths differ");

  std::vector<Stride> strides;
  for (auto [begin, end] : detail::contiguous_chunks(time_s)) {
    // Maximal below-threshold runs as [start_idx, end_idx) index pairs.
    std::vector<std::pair<std::size_t, std::size_t>> swings;
    std::size_t k = begin;
    while (k < end) {
      if (force_n[k] < threshold_n) {
        std::size_t run_start = k;
        while (k < end && force_n[k] < threshold_n) ++k;
        if (k < end) swings.emplace_back(run_start, k);  // open runs have no heel strike
      } else {
        ++k;
      }
    }
    for (std::size_t s = 0; s + 1 < swings.size(); ++s) {
      Stride st;
      st.stance_start_s = time_s[swings[s].second];
      st.swing_start_s = time_s[swings[s + 1].first];
      st.stride_end_s = time_s[swings[s + 1].second];
      strides.push_back(st);
    }
  }
  return strides;
}

/// Stride segmentation for one foot. Strides outside [0.4 s, 4 s] are
/// discarded as artifacts; fewer than 5 surviving strides is insufficient
/// gait.
inline StrideTable segment_strides(const std::vector<double>& time_s,
                                   const std::vector<double>& force_n,
                                   double threshold_n) {
  StrideTable table;
  for (const auto& st : detect_strides(time_s, force_n, threshold_n)) {
    const double dur = st.stride_duration_s();
    if (dur < 0.4 || dur > 4.0) continue;
    table.strides.push_back(st);
  }
  if (table.strides.size() < 5)
    throw DataError("insufficient gait: only " + std::to_string(table.strides.size()) +
                    " valid strides detected");
  return table;
}

/// The fourteen timing features. Units: seconds for z1, z2, z6, z7; percent
/// for the rest.
struct RawFeatures {
  double z1 = 0.0;   // mean short swing time
  double z2 = 0.0;   // mean long swing time
  double z3 = 0.0;   // mean gait asymmetry, 100*|ln(short/long)|
  double z4 = 0.0;   // mean swing % of stride, left
  double z5 = 0.0;   // mean swing % of stride, right
  double z6 = 0.0;   // mean swing duration, left
  double z7 = 0.0;   // mean swing duration, right
  double z8 = 0.0;   // CV of short swing time
  double z9 = 0.0;   // CV of long swing time
  double z10 = 0.0;  // 100*|ln(CV_short/CV_long)|
  double z11 = 0.0;  // CV of left swing duration
  double z12 = 0.0;  // CV of right swing duration
  double z13 = 0.0;  // CV of left stride duration
  double z14 = 0.0;  // CV of right stride duration

  std::array<double, 14> as_array() const {
    return {z1, z2, z3, z4, z5, z6, z7, z8, z9, z10, z11, z12, z13, z14};
  }
};

namespace detail {

inline double coefficient_of_variation(const std::vector<double>& v, const char* what) {
  const double m = mean(v);
  if (m == 0.0) throw DataError(std::string("degenerate gait: zero mean ") + what);
  return 100.0 * population_stddev(v) / m;
}

}  // namespace detail

/// Computes z1..z14 from chronologically paired left/right strides
/// (unmatched trailing strides are dropped). Standard deviations are
/// population standard deviations throughout.
inline RawFeatures compute_raw_features(const StrideTable& left, const StrideTable& right) {
  if (left.strides.empty() || right.strides.empty())
    throw ContractError("stride tables must be nonempty");
  const std::size_t n = std::min(left.strides.size(), right.strides.size());

  std::vector<double> short_swing(n), long_swing(n), asym(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double l = left.strides[k].swing_duration_s();
    const double r = right.strides[k].swing_duration_s();
    short_swing[k] = std::min(l, r);
    long_swing[k] = std::max(l, r);
    asym[k] = 100.0 * std::abs(std::log(short_swing[k] / long_swing[k]));
  }

  RawFeatures z;
  z.z1 = mean(short_swing);
  z.z2 = mean(long_swing);
  z.z3 = mean(asym);
  z.z4 = mean(left.swing_pcts());
  z.z5 = mean(right.swing_pcts());
  z.z6 = mean(left.swing_durations());
  z.z7 = mean(right.swing_durations());
  z.z8 = detail::coefficient_of_variation(short_swing, "short swing time");
  z.z9 = detail::coefficient_of_variation(long_swing, "long swing time");
  if (z.z8 == 0.0 || z.z9 == 0.0)
    throw DataError("degenerate gait: zero-variance swing times make the CV ratio undefined");
  z.z10 = 100.0 * std::abs(std::log(z.z8 / z.z9));
  z.z11 = detail::coefficient_of_variation(left.swing_durations(), "left swing duration");
  z.z12 = detail::coefficient_of_variation(right.swing_durations(), "right swing duration");
  z.z13 = detail::coefficient_of_variation(left.stride_durations(), "left stride duration");
  z.z14 = detail::coefficient_of_variation(right.stride_durations(), "right stride duration");
  return z;
}

using Features = std::array<double, kNumFeatures>;

/// Collapses z1..z14 to the ten network inputs: left/right pairs are
/// averaged, everything else passes through.
inline Features reduce_features(const RawFeatures& z) {
  return {z.z1,
          z.z2,
          z.z3,
          0.5 * (z.z4 + z.z5),
          0.5 * (z.z6 + z.z7),
          z.z8,
          z.z9,
          z.z10,
          0.5 * (z.z11 + z.z12),
          0.5 * (z.z13 + z.z14)};
}

/// Per-feature min/max learned from a training set; persisted with any
/// trained model.
struct NormalizationParams {
  Features mins{};
  Features maxs{};
};

/// An extracted, not yet normalized sample: one row of the feature CSV.
struct FeatureRow {
  std::string subject_id;
  Dataset dataset = Dataset::Ga;
  int label = -1;  // +1 patient, -1 healthy
  Features x{};
};

/// A normalized sample: every coordinate in [0, 1].
struct FeatureVector {
  std::string subject_id;
  Dataset dataset = Dataset::Ga;
  int label = -1;
  Features x{};
};

inline NormalizationParams fit_normalization(const std::vector<FeatureRow>& train) {
  if (train.empty()) throw ContractError("cannot fit normalization on an empty set");
  NormalizationParams p;
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    double lo = train.front().x[j], hi = train.front().x[j];
    for (const auto& row : train) {
      lo = std::min(lo, row.x[j]);
      hi = std::max(hi, row.x[j]);
    }
    if (!(hi > lo))
      throw DataError("degenerate feature x" + std::to_string(j + 1) +
                      ": constant over the training set");
    p.mins[j] = lo;
    p.maxs[j] = hi;
  }
  return p;
}

/// Like fit_normalization but maps a constant feature onto a unit-width
/// range centred on its value instead of failing. Used by cross-validation,
/// where tiny training folds can legitimately be constant in a feature.
inline NormalizationParams fit_normalization_with_fallback(const std::vector<FeatureRow>& train) {
  if (train.empty()) throw ContractError("cannot fit normalization on an empty set");
  NormalizationParams p;
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    double lo = train.front().x[j], hi = train.front().x[j];
    for (const auto& row : train) {
      lo = std::min(lo, row.x[j]);
      hi = std::max(hi, row.x[j]);
    }
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    p.mins[j] = lo;
    p.maxs[j] = hi;
  }
  return p;
}

/// (x - min) / (max - min), clipped to [0, 1] for out-of-range values.
inline Features apply_normalization(const Features& x, const NormalizationParams& p) {
  Features out{};
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    const double span = p.maxs[j] - p.mins[j];
    if (!(span > 0.0)) throw ContractError("normalization params not fitted");
    out[j] = std::clamp((x[j] - p.mins[j]) / span, 0.0, 1.0);
  }
  return out;
}

inline FeatureVector normalize_row(const FeatureRow& row, const NormalizationParams& p) {
  return FeatureVector{row.subject_id, row.dataset, row.label, apply_normalization(row.x, p)};
}

}  // namespace fuzzygait
