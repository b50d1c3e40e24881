#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fuzzygait/common.hpp"
#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/vgrf.hpp"

namespace fuzzygait {

struct PreprocessConfig {
  double trim_s = 20.0;            // seconds removed from each end
  int median_window = 10;          // samples
  double turnaround_mad_k = 3.0;   // stride-duration outlier factor
  bool remove_turnarounds = true;
};

/// Cuts all channels to t in [t0 + trim_s, t_end - trim_s].
inline VgrfRecording trim_edges(const VgrfRecording& rec, double trim_s) {
  if (trim_s < 0.0) throw ConfigError("trim_s must be nonnegative");
  if (rec.time_s.empty()) throw DataError("empty recording");
  if (!(rec.duration_s() > 2.0 * trim_s))
    throw DataError("recording too short to trim: " + format_double(rec.duration_s()) +
                    " s <= 2 * " + format_double(trim_s) + " s");
  const double lo = rec.time_s.front() + trim_s;
  const double hi = rec.time_s.back() - trim_s;

  VgrfRecording out = rec;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < rec.size(); ++k)
    if (rec.time_s[k] >= lo && rec.time_s[k] <= hi) keep.push_back(k);

  auto select = [&](const std::vector<double>& src) {
    std::vector<double> dst;
    dst.reserve(keep.size());
    for (std::size_t k : keep) dst.push_back(src[k]);
    return dst;
  };
  out.time_s = select(rec.time_s);
  for (std::size_t s = 0; s < 16; ++s) out.sensors_n[s] = select(rec.sensors_n[s]);
  out.total_left_n = select(rec.total_left_n);
  out.total_right_n = select(rec.total_right_n);
  return out;
}

/// Running median. The window for element k spans [k - w/2, k + (w-1)/2],
/// shrunk at the edges to the available samples; even-cardinality windows
/// use the mean of the two middle order statistics.
inline std::vector<double> median_filter(const std::vector<double>& series, int window) {
  if (window < 1) throw ConfigError("median window must be >= 1");
  const std::size_t n = series.size();
  const std::size_t lo_span = static_cast<std::size_t>(window) / 2;
  const std::size_t hi_span = static_cast<std::size_t>(window - 1) / 2;
  std::vector<double> out(n);
  std::vector<double> buf;
  buf.reserve(static_cast<std::size_t>(window));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k >= lo_span ? k - lo_span : 0;
    const std::size_t b = std::min(n - 1, k + hi_span);
    buf.assign(series.begin() + static_cast<std::ptrdiff_t>(a),
               series.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    std::sort(buf.begin(), buf.end());
    const std::size_t m = buf.size();
    out[k] = (m % 2 == 1) ? buf[m / 2] : 0.5 * (buf[m / 2 - 1] + buf[m / 2]);
  }
  return out;
}

/// Median-filters all 18 force channels in place; the time axis is untouched.
inline VgrfRecording apply_median_filter(VgrfRecording rec, int window) {
  rec.for_each_channel([&](std::vector<double>& channel) { channel = median_filter(channel, window); });
  return rec;
}

struct TurnaroundResult {
  VgrfRecording recording;
  std::vector<std::pair<double, double>> removed;  // excised [start, end) intervals in seconds
};

/// Excises turnaround segments: strides (either foot) whose duration
/// deviates from the recording's median stride duration by more than
/// k * MAD are removed along with the samples they span. The deviation
/// scale is floored at one sample period, since durations are quantized to
/// the sampling grid and perfectly regular gait would otherwise have MAD 0
/// and flag every stride. The surviving samples keep their original
/// timestamps, so each cut is visible as a time gap and later segmentation
/// never builds a stride across one.
inline TurnaroundResult remove_turnarounds(const VgrfRecording& rec, double mad_k,
                                           double swing_threshold_n = 20.0) {
  if (mad_k <= 0.0) throw ConfigError("turnaround MAD factor must be positive");

  std::vector<std::pair<double, double>> flagged;
  for (const auto* total : {&rec.total_left_n, &rec.total_right_n}) {
    const auto strides = detect_strides(rec.time_s, *total, swing_threshold_n);
    if (strides.size() < 5)
      throw DataError("insufficient gait: only " + std::to_string(strides.size()) +
                      " strides detected during turnaround removal");
    std::vector<double> durations;
    durations.reserve(strides.size());
    for (const auto& st : strides) durations.push_back(st.stride_duration_s());
    const double med = median(durations);
    const double dev = std::max(mad(durations), 1.0 / rec.sample_rate_hz);
    for (const auto& st : strides)
      if (std::abs(st.stride_duration_s() - med) > mad_k * dev)
        flagged.emplace_back(st.stance_start_s, st.stride_end_s);
  }

  if (flagged.empty()) return {rec, {}};

  // Merge overlapping intervals.
  std::sort(flagged.begin(), flagged.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : flagged) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }

  auto in_removed = [&](double t) {
    for (const auto& iv : merged)
      if (t >= iv.first && t < iv.second) return true;
    return false;
  };

  VgrfRecording out = rec;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < rec.size(); ++k)
    if (!in_removed(rec.time_s[k])) keep.push_back(k);
  auto select = [&](const std::vector<double>& src) {
    std::vector<double> dst;
    dst.reserve(keep.size());
    for (std::size_t k : keep) dst.push_back(src[k]);
    return dst;
  };
  out.time_s = select(rec.time_s);
  for (std::size_t s = 0; s < 16; ++s) out.sensors_n[s] = select(rec.sensors_n[s]);
  out.total_left_n = select(rec.total_left_n);
  out.total_right_n = select(rec.total_right_n);
  return {std::move(out), std::move(merged)};
}

}  // namespace fuzzygait
