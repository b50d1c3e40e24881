#pragma once

#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/preprocess.hpp"
#include "fuzzygait/vgrf.hpp"

namespace fuzzygait {

struct ExtractionResult {
  FeatureRow row;
  RawFeatures raw;
};

/// Full signal-to-features path for one recording: trim, median-filter,
/// excise turnarounds, segment both feet, compute and reduce the timing
/// features. Filtering runs before excision so the median window never
/// smears values across a cut.
inline ExtractionResult extract_features(const VgrfRecording& rec, const PreprocessConfig& cfg,
                                         double swing_threshold_n = 20.0) {
  VgrfRecording work = trim_edges(rec, cfg.trim_s);
  work = apply_median_filter(std::move(work), cfg.median_window);
  if (cfg.remove_turnarounds)
    work = remove_turnarounds(work, cfg.turnaround_mad_k, swing_threshold_n).recording;

  const StrideTable left = segment_strides(work.time_s, work.total_left_n, swing_threshold_n);
  const StrideTable right = segment_strides(work.time_s, work.total_right_n, swing_threshold_n);
  const RawFeatures raw = compute_raw_features(left, right);

  ExtractionResult result;
  result.raw = raw;
  result.row.subject_id = rec.subject_id;
  result.row.dataset = rec.dataset;
  result.row.label = rec.cohort == Cohort::Patient ? +1 : -1;
  result.row.x = reduce_features(raw);
  return result;
}

}  // namespace fuzzygait
