#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fuzzygait/gait_features.hpp"
#include "fuzzygait/pipeline.hpp"
#include "synthetic.hpp"

namespace fg = fuzzygait;

namespace {

/// Stride table from (swing, stride) duration pairs laid out back to back.
fg::StrideTable make_table(const std::vector<std::pair<double, double>>& swing_stride) {
  fg::StrideTable t;
  double t0 = 0.0;
  for (const auto& [swing, stride] : swing_stride) {
    fg::Stride st;
    st.stance_start_s = t0;
    st.swing_start_s = t0 + (stride - swing);
    st.stride_end_s = t0 + stride;
    t.strides.push_back(st);
    t0 += stride;
  }
  return t;
}

}  // namespace

TEST_CASE("60/40 square wave segments into 40% swing strides", "[features]") {
  const auto rec = synth::make_recording("GaCo01", fg::Dataset::Ga, fg::Cohort::Control,
                                         synth::repeat_cycle({60, 40}, 12),
                                         synth::repeat_cycle({60, 40}, 12));
  const auto table = fg::segment_strides(rec.time_s, rec.total_left_n, 20.0);
  REQUIRE(table.strides.size() == 11);
  for (const auto& st : table.strides) {
    CHECK(st.swing_duration_s() == Catch::Approx(0.4).margin(1e-9));
    CHECK(st.stride_duration_s() == Catch::Approx(1.0).margin(1e-9));
    CHECK(st.swing_pct() == Catch::Approx(40.0).margin(1e-9));
  }
}

TEST_CASE("all-zero force has no detectable gait", "[features]") {
  std::vector<double> time, force;
  for (int k = 0; k < 500; ++k) {
    time.push_back(0.01 * (k + 1));
    force.push_back(0.0);
  }
  CHECK_THROWS_AS(fg::segment_strides(time, force, 20.0), fg::DataError);
}

TEST_CASE("alternating 0.35/0.65 swings produce alternating swing percentages", "[features]") {
  std::vector<synth::Cycle> cycles;
  for (int k = 0; k < 12; ++k) cycles.push_back(k % 2 == 0 ? synth::Cycle{65, 35} : synth::Cycle{35, 65});
  const auto rec = synth::make_recording("GaPt01", fg::Dataset::Ga, fg::Cohort::Patient,
                                         cycles, cycles);
  const auto table = fg::segment_strides(rec.time_s, rec.total_left_n, 20.0);
  REQUIRE(table.strides.size() >= 5);
  for (std::size_t k = 0; k < table.strides.size(); ++k) {
    const double expected = k % 2 == 0 ? 65.0 : 35.0;  // stride k ends in cycle k+1's swing
    CHECK(table.strides[k].swing_pct() == Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("artifact strides outside [0.4 s, 4 s] are discarded", "[features]") {
  std::vector<synth::Cycle> cycles = synth::repeat_cycle({60, 40}, 8);
  cycles.push_back({20, 10});   // 0.3 s stride
  cycles.push_back({450, 40});  // 4.9 s stride
  auto tail = synth::repeat_cycle({60, 40}, 8);
  cycles.insert(cycles.end(), tail.begin(), tail.end());
  const auto rec = synth::make_recording("GaPt02", fg::Dataset::Ga, fg::Cohort::Patient,
                                         cycles, cycles);
  const auto table = fg::segment_strides(rec.time_s, rec.total_left_n, 20.0);
  for (const auto& st : table.strides) {
    CHECK(st.stride_duration_s() >= 0.4);
    CHECK(st.stride_duration_s() <= 4.0);
  }
}

TEST_CASE("swing threshold must be positive", "[features]") {
  CHECK_THROWS_AS(fg::segment_strides({0.01, 0.02}, {1.0, 1.0}, 0.0), fg::ConfigError);
}

TEST_CASE("symmetric gait has zero asymmetry", "[features]") {
  const auto left = make_table({{0.4, 1.0}, {0.42, 1.05}, {0.38, 0.95}, {0.41, 1.02}, {0.39, 0.98}});
  const auto z = fg::compute_raw_features(left, left);
  CHECK(z.z3 == 0.0);
  CHECK(z.z1 == z.z2);
}

TEST_CASE("constant 5:6 swing ratio reproduces the asymmetry formula", "[features]") {
  // Every pair is (0.35 s, 0.42 s) up to a common scale, so each stride's
  // asymmetry equals 100*|ln(0.35/0.42)| while the timing CVs stay nonzero.
  const auto left = make_table({{0.35, 1.0}, {0.7, 2.0}, {0.35, 1.0}, {0.7, 2.0}, {0.35, 1.0}});
  const auto right = make_table({{0.42, 1.0}, {0.84, 2.0}, {0.42, 1.0}, {0.84, 2.0}, {0.42, 1.0}});
  const auto z = fg::compute_raw_features(left, right);
  // Frozen from the table formula: 100*ln(6/5).
  CHECK(z.z3 == Catch::Approx(18.232155679395463).margin(1e-9));
  CHECK(z.z3 == Catch::Approx(100.0 * std::abs(std::log(0.35 / 0.42))).margin(1e-12));
  CHECK(z.z10 == Catch::Approx(0.0).margin(1e-9));  // equal CVs on both series
}

TEST_CASE("zero-variance swing times are degenerate gait", "[features]") {
  // Power-of-two durations keep the cumulative stride times exact, so the
  // swing series really is constant.
  const auto left = make_table({{0.25, 1.0}, {0.25, 1.0}, {0.25, 1.0}, {0.25, 1.0}, {0.25, 1.0}});
  const auto right = make_table({{0.5, 1.0}, {0.5, 1.0}, {0.5, 1.0}, {0.5, 1.0}, {0.5, 1.0}});
  CHECK_THROWS_AS(fg::compute_raw_features(left, right), fg::DataError);
}

TEST_CASE("unmatched trailing strides are dropped from the pairing", "[features]") {
  const auto left = make_table({{0.4, 1.0}, {0.41, 1.0}, {0.39, 1.0}, {0.42, 1.0}, {0.38, 1.0},
                                {0.9, 1.0}, {0.9, 1.0}});
  const auto right = make_table({{0.4, 1.0}, {0.41, 1.0}, {0.39, 1.0}, {0.42, 1.0}, {0.38, 1.0}});
  const auto z = fg::compute_raw_features(left, right);
  // The 0.9 s swings exist only in the unmatched tail and must not move z2.
  CHECK(z.z2 < 0.43);
}

TEST_CASE("feature reduction follows the pairing table", "[features]") {
  fg::RawFeatures z;
  z.z1 = 0.35;
  z.z2 = 0.45;
  z.z3 = 7.0;
  z.z4 = 38.0;
  z.z5 = 42.0;
  z.z6 = 0.36;
  z.z7 = 0.44;
  z.z8 = 3.0;
  z.z9 = 4.0;
  z.z10 = 28.0;
  z.z11 = 5.0;
  z.z12 = 7.0;
  z.z13 = 2.0;
  z.z14 = 4.0;
  const auto x = fg::reduce_features(z);
  CHECK(x[0] == 0.35);  // identity rows
  CHECK(x[1] == 0.45);
  CHECK(x[2] == 7.0);
  CHECK(x[3] == 40.0);  // (38+42)/2
  CHECK(x[4] == Catch::Approx(0.4));
  CHECK(x[5] == 3.0);
  CHECK(x[6] == 4.0);
  CHECK(x[7] == 28.0);
  CHECK(x[8] == 6.0);
  CHECK(x[9] == 3.0);

  fg::RawFeatures c;
  c.z1 = c.z2 = c.z3 = c.z4 = c.z5 = c.z6 = c.z7 = 5.5;
  c.z8 = c.z9 = c.z10 = c.z11 = c.z12 = c.z13 = c.z14 = 5.5;
  for (double v : fg::reduce_features(c)) CHECK(v == 5.5);
}

TEST_CASE("normalization maps the training range onto [0,1] and clips", "[features]") {
  std::vector<fg::FeatureRow> train(2);
  for (std::size_t j = 0; j < fg::kNumFeatures; ++j) {
    train[0].x[j] = 2.0;
    train[1].x[j] = 4.0;
  }
  const auto params = fg::fit_normalization(train);
  fg::Features probe;
  probe.fill(3.0);
  CHECK(fg::apply_normalization(probe, params)[0] == 0.5);
  probe.fill(5.0);
  CHECK(fg::apply_normalization(probe, params)[0] == 1.0);  // clipped
  probe.fill(2.0);
  CHECK(fg::apply_normalization(probe, params)[0] == 0.0);  // training min
  probe.fill(4.0);
  CHECK(fg::apply_normalization(probe, params)[0] == 1.0);  // training max
}

TEST_CASE("a constant training feature is rejected by name", "[features]") {
  std::vector<fg::FeatureRow> train(3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < fg::kNumFeatures; ++j) train[k].x[j] = static_cast<double>(k);
  for (auto& row : train) row.x[4] = 9.0;  // x5 constant
  try {
    fg::fit_normalization(train);
    FAIL("expected DataError");
  } catch (const fg::DataError& e) {
    CHECK(std::string(e.what()).find("x5") != std::string::npos);
  }
  // The relaxed variant centres the constant instead.
  const auto params = fg::fit_normalization_with_fallback(train);
  fg::Features probe;
  probe.fill(1.0);
  probe[4] = 9.0;
  CHECK(fg::apply_normalization(probe, params)[4] == 0.5);
}

TEST_CASE("swapping feet leaves the symmetric features unchanged", "[features]") {
  const auto left = make_table({{0.4, 1.0}, {0.45, 1.1}, {0.38, 0.9}, {0.42, 1.05}, {0.36, 0.94}});
  const auto right = make_table({{0.37, 1.02}, {0.48, 1.15}, {0.35, 0.93}, {0.44, 1.08}, {0.39, 0.9}});
  const auto z_lr = fg::compute_raw_features(left, right);
  const auto z_rl = fg::compute_raw_features(right, left);
  CHECK(z_lr.z1 == z_rl.z1);
  CHECK(z_lr.z2 == z_rl.z2);
  CHECK(z_lr.z3 == z_rl.z3);
  const auto x_lr = fg::reduce_features(z_lr);
  const auto x_rl = fg::reduce_features(z_rl);
  CHECK(x_lr[3] == x_rl[3]);  // x4
  CHECK(x_lr[4] == x_rl[4]);  // x5
  CHECK(x_lr[8] == x_rl[8]);  // x9
  CHECK(x_lr[9] == x_rl[9]);  // x10
}

TEST_CASE("the extraction pipeline turns a recording into one labeled row", "[features]") {
  const auto rec = synth::make_recording("JuPt07", fg::Dataset::Ju, fg::Cohort::Patient,
                                         synth::wobbly_cycles(58, 42, 40, 3),
                                         synth::wobbly_cycles(66, 34, 40, 2));
  fg::PreprocessConfig cfg;
  cfg.trim_s = 2.0;
  const auto res = fg::extract_features(rec, cfg);
  CHECK(res.row.subject_id == "JuPt07");
  CHECK(res.row.dataset == fg::Dataset::Ju);
  CHECK(res.row.label == +1);
  CHECK(res.row.x[0] <= res.row.x[1]);         // short swing <= long swing
  CHECK(res.row.x[2] > 1.0);                   // clearly asymmetric gait
  CHECK(res.raw.z3 == res.row.x[2]);           // identity rows pass through
  for (double v : res.row.x) CHECK(std::isfinite(v));

  // A walk shorter than twice the trim length cannot be processed.
  cfg.trim_s = 30.0;
  CHECK_THROWS_AS(fg::extract_features(rec, cfg), fg::DataError);
}

TEST_CASE("features depend on timing, not force magnitude", "[features]") {
  const auto cycles_l = synth::wobbly_cycles(60, 40, 12, 2);
  const auto cycles_r = synth::wobbly_cycles(62, 38, 12, 2);
  const auto rec1 = synth::make_recording("GaPt03", fg::Dataset::Ga, fg::Cohort::Patient,
                                          cycles_l, cycles_r, 600.0);
  const auto rec2 = synth::make_recording("GaPt03", fg::Dataset::Ga, fg::Cohort::Patient,
                                          cycles_l, cycles_r, 3120.0);  // 5.2x the force
  const auto t1l = fg::segment_strides(rec1.time_s, rec1.total_left_n, 20.0);
  const auto t1r = fg::segment_strides(rec1.time_s, rec1.total_right_n, 20.0);
  const auto t2l = fg::segment_strides(rec2.time_s, rec2.total_left_n, 20.0);
  const auto t2r = fg::segment_strides(rec2.time_s, rec2.total_right_n, 20.0);
  const auto x1 = fg::reduce_features(fg::compute_raw_features(t1l, t1r));
  const auto x2 = fg::reduce_features(fg::compute_raw_features(t2l, t2r));
  for (std::size_t j = 0; j < fg::kNumFeatures; ++j) CHECK(x1[j] == x2[j]);
}
